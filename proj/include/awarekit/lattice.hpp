#pragma once

// The projective lattice of disjoint state spaces {S_Phi}, indexed by subsets
// of a finite atom set, together with events (base space + base) and their
// Boolean algebra. Every state of Omega carries a global index; sets of
// states are bitsets over those indices.

#include "awarekit/error.hpp"
#include "awarekit/formula.hpp"
#include "awarekit/mutation.hpp"
#include "awarekit/report.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace awarekit {

using AtomMask = std::uint32_t;
using StateSet = boost::dynamic_bitset<>;

inline constexpr int hard_atom_limit = 12;

/// |At| cap: 6 unless AWAREKIT_MAX_ATOMS says otherwise (never above 12).
inline int max_atoms() {
  if (const char* env = std::getenv("AWAREKIT_MAX_ATOMS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0)
      return static_cast<int>(std::min<long>(v, hard_atom_limit));
  }
  return 6;
}

/// Psi is below Phi in the lattice order (Psi subset of Phi).
inline constexpr bool below(AtomMask psi, AtomMask phi) { return (psi & ~phi) == 0; }

inline int popcount(AtomMask m) { return __builtin_popcount(m); }

/// An event D-up, identified by its base space and its base D (a subset of that space).
struct Event {
  AtomMask space = 0;
  StateSet base;

  bool operator==(const Event& o) const { return space == o.space && base == o.base; }
  bool operator!=(const Event& o) const { return !(*this == o); }
};

/// A possibility correspondence: one state set per state.
using Correspondence = std::vector<StateSet>;

class Lattice {
public:
  Lattice() = default;

  int atom_count() const noexcept { return static_cast<int>(atoms_.size()); }
  AtomMask space_count() const noexcept { return AtomMask{1} << atoms_.size(); }
  AtomMask top() const noexcept { return space_count() - 1; }
  int state_count() const noexcept { return static_cast<int>(space_of_.size()); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  const std::vector<std::string>& agents() const noexcept { return agents_; }
  int agent_count() const noexcept { return static_cast<int>(agents_.size()); }

  std::optional<int> atom_index(std::string_view name) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end() || *it != name)
      return std::nullopt;
    return static_cast<int>(it - atoms_.begin());
  }

  int agent_index(std::string_view name) const {
    for (std::size_t i = 0; i < agents_.size(); ++i)
      if (agents_[i] == name)
        return static_cast<int>(i);
    throw ModelError(ErrorCode::UnknownAgent, std::string(name));
  }

  AtomMask mask_of(const std::set<std::string>& names) const {
    AtomMask m = 0;
    for (const auto& n : names) {
      auto i = atom_index(n);
      if (!i)
        throw ModelError(ErrorCode::UnknownAtom, n);
      m |= AtomMask{1} << *i;
    }
    return m;
  }

  std::set<std::string> names_of(AtomMask m) const {
    std::set<std::string> out;
    for (int i = 0; i < atom_count(); ++i)
      if (m & (AtomMask{1} << i))
        out.insert(atoms_[i]);
    return out;
  }

  /// Canonical space key: sorted atom names joined by ','; "" is the meet space.
  std::string space_key(AtomMask m) const {
    std::string key;
    for (int i = 0; i < atom_count(); ++i)
      if (m & (AtomMask{1} << i)) {
        if (!key.empty())
          key += ',';
        key += atoms_[i];
      }
    return key;
  }

  /// Accepts the canonical key, and also plain concatenation when every atom name is one character.
  AtomMask parse_space_key(std::string_view key) const {
    AtomMask m = 0;
    if (key.empty())
      return 0;
    bool single_chars = std::all_of(atoms_.begin(), atoms_.end(), [](const auto& a) { return a.size() == 1; });
    if (key.find(',') == std::string_view::npos && single_chars && key.size() > 1 && !atom_index(key)) {
      for (char c : key) {
        auto i = atom_index(std::string_view(&c, 1));
        if (!i)
          throw ModelError(ErrorCode::UnknownSpace, "space key '" + std::string(key) + "'");
        m |= AtomMask{1} << *i;
      }
      return m;
    }
    std::size_t start = 0;
    while (start <= key.size()) {
      std::size_t comma = key.find(',', start);
      std::string_view part = key.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      auto i = atom_index(part);
      if (!i)
        throw ModelError(ErrorCode::UnknownSpace, "space key '" + std::string(key) + "'");
      m |= AtomMask{1} << *i;
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    return m;
  }

  int begin_of(AtomMask m) const { return offset_[m]; }
  int end_of(AtomMask m) const { return offset_[m + 1]; }
  int size_of(AtomMask m) const { return offset_[m + 1] - offset_[m]; }
  const std::vector<std::string>& ids_of(AtomMask m) const { return ids_[m]; }

  AtomMask space_of(int g) const { return space_of_[g]; }
  int local_of(int g) const { return g - offset_[space_of_[g]]; }
  const std::string& id_of(int g) const { return ids_[space_of_[g]][local_of(g)]; }
  std::string state_name(int g) const { return space_key(space_of(g)) + ":" + id_of(g); }

  std::optional<int> find_state(AtomMask m, std::string_view id) const {
    const auto& ids = ids_[m];
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id)
        return offset_[m] + static_cast<int>(i);
    return std::nullopt;
  }

  /// Resolves "spaceKey:stateId".
  int state_ref(std::string_view ref) const {
    auto colon = ref.rfind(':');
    if (colon == std::string_view::npos)
      throw ModelError(ErrorCode::UnknownState, "state reference '" + std::string(ref) + "' lacks 'space:'");
    AtomMask m = parse_space_key(ref.substr(0, colon));
    auto g = find_state(m, ref.substr(colon + 1));
    if (!g)
      throw ModelError(ErrorCode::UnknownState, std::string(ref));
    return *g;
  }

  /// r^{space(g)}_{psi}(g), or -1 when psi is not below space(g) or a projection map is missing.
  int project(int g, AtomMask psi) const { return proj_[static_cast<std::size_t>(g) * space_count() + psi]; }

  /// Covering projection map S_phi -> S_{phi \ {atom}} as local indices (empty if absent).
  const std::vector<int>& covering_map(AtomMask phi, int atom) const { return cover_[phi][atom]; }

  const Event& valuation(int atom) const { return valuation_[atom]; }
  const std::vector<Event>& valuation() const noexcept { return valuation_; }

  /// Structural defects found while assembling the lattice (reported by validators).
  const std::vector<Violation>& build_issues() const noexcept { return issues_; }

  StateSet empty_set() const { return StateSet(static_cast<std::size_t>(state_count())); }

  const StateSet& space_set(AtomMask m) const { return space_sets_[m]; }

  std::string set_name(const StateSet& s) const {
    std::string out = "{";
    bool first = true;
    for (auto g = s.find_first(); g != StateSet::npos; g = s.find_next(g)) {
      if (!first)
        out += ", ";
      first = false;
      out += state_name(static_cast<int>(g));
    }
    return out + "}";
  }

  std::string event_name(const Event& e) const { return "[" + space_key(e.space) + "]" + set_name(e.base); }

  friend class LatticeBuilder;

private:
  std::vector<std::string> atoms_;
  std::vector<std::string> agents_;
  std::vector<std::vector<std::string>> ids_;
  std::vector<int> offset_;
  std::vector<AtomMask> space_of_;
  std::vector<std::vector<std::vector<int>>> cover_;
  std::vector<int> proj_;
  std::vector<Event> valuation_;
  std::vector<Violation> issues_;
  std::vector<StateSet> space_sets_;
};

/// Assembles a Lattice from names. Atoms are sorted; masks refer to that order.
class LatticeBuilder {
public:
  LatticeBuilder(std::vector<std::string> atoms, std::vector<std::string> agents) {
    std::sort(atoms.begin(), atoms.end());
    if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end())
      throw ModelError(ErrorCode::InvalidInput, "duplicate atom names");
    if (static_cast<int>(atoms.size()) > max_atoms())
      throw ModelError(ErrorCode::InvalidInput, "|At| = " + std::to_string(atoms.size()) + " exceeds the cap of " +
                                                    std::to_string(max_atoms()) + " (AWAREKIT_MAX_ATOMS)");
    for (const auto& a : atoms)
      if (!valid_atom_name(a))
        throw ModelError(ErrorCode::InvalidInput, "invalid atom name '" + a + "'");
    if (agents.empty())
      throw ModelError(ErrorCode::InvalidInput, "the agent set must be nonempty");
    lat_.atoms_ = std::move(atoms);
    lat_.agents_ = std::move(agents);
    lat_.ids_.assign(lat_.space_count(), {});
    lat_.cover_.assign(lat_.space_count(), std::vector<std::vector<int>>(lat_.atoms_.size()));
    lat_.valuation_.assign(lat_.atoms_.size(), Event{});
    valuation_set_.assign(lat_.atoms_.size(), false);
  }

  /// The partially assembled lattice, usable for atom and space-key lookups.
  const Lattice& partial() const { return lat_; }

  void add_space(AtomMask m, std::vector<std::string> ids) {
    if (m >= lat_.space_count())
      throw ModelError(ErrorCode::UnknownSpace, "mask out of range");
    std::set<std::string> seen(ids.begin(), ids.end());
    if (seen.size() != ids.size())
      throw ModelError(ErrorCode::InvalidInput, "duplicate state id in space '" + lat_.space_key(m) + "'");
    lat_.ids_[m] = std::move(ids);
  }

  /// Covering projection from `phi` dropping `atom`, as local index map.
  void add_projection(AtomMask phi, int atom, std::vector<int> local_map) {
    lat_.cover_[phi][atom] = std::move(local_map);
  }

  /// Covering projection given by state ids; unknown ids are input errors.
  void add_projection(AtomMask phi, AtomMask psi, const std::map<std::string, std::string>& ids) {
    if (!below(psi, phi) || popcount(phi & ~psi) != 1)
      throw ModelError(ErrorCode::InvalidInput, "projection '" + lat_.space_key(phi) + "->" + lat_.space_key(psi) +
                                                    "' is not a covering pair");
    int atom = __builtin_ctz(phi & ~psi);
    std::vector<int> map(lat_.ids_[phi].size(), -1);
    for (const auto& [from, to] : ids) {
      auto fi = index_in(phi, from);
      auto ti = index_in(psi, to);
      if (fi < 0 || ti < 0)
        throw ModelError(ErrorCode::UnknownState, "projection entry " + from + "->" + to + " between '" +
                                                      lat_.space_key(phi) + "' and '" + lat_.space_key(psi) + "'");
      map[fi] = ti;
    }
    lat_.cover_[phi][atom] = std::move(map);
  }

  /// v(p) given as base space and base ids (local indices resolved at build time).
  void set_valuation(int atom, AtomMask space, std::vector<std::string> base_ids) {
    pending_valuation_.push_back({atom, space, std::move(base_ids)});
  }

  Lattice build() {
    Lattice& l = lat_;
    const AtomMask spaces = l.space_count();
    l.offset_.assign(spaces + 1, 0);
    for (AtomMask m = 0; m < spaces; ++m)
      l.offset_[m + 1] = l.offset_[m] + static_cast<int>(l.ids_[m].size());
    l.space_of_.assign(l.offset_[spaces], 0);
    for (AtomMask m = 0; m < spaces; ++m) {
      if (l.ids_[m].empty())
        l.issues_.push_back({"lattice.nonempty-space", "space '" + l.space_key(m) + "' has no states"});
      for (int g = l.offset_[m]; g < l.offset_[m + 1]; ++g)
        l.space_of_[g] = m;
    }
    l.space_sets_.assign(spaces, l.empty_set());
    for (AtomMask m = 0; m < spaces; ++m)
      for (int g = l.offset_[m]; g < l.offset_[m + 1]; ++g)
        l.space_sets_[m].set(g);
    // Covering maps: presence and totality.
    for (AtomMask phi = 0; phi < spaces; ++phi)
      for (int a = 0; a < l.atom_count(); ++a) {
        if (!(phi & (AtomMask{1} << a)))
          continue;
        auto& map = l.cover_[phi][a];
        AtomMask psi = phi & ~(AtomMask{1} << a);
        std::string pair = "'" + l.space_key(phi) + "->" + l.space_key(psi) + "'";
        if (map.size() != l.ids_[phi].size()) {
          if (!l.ids_[phi].empty())
            l.issues_.push_back({"projection.missing", "no projection map " + pair});
          map.assign(l.ids_[phi].size(), -1);
          continue;
        }
        for (std::size_t i = 0; i < map.size(); ++i)
          if (map[i] < 0 || map[i] >= static_cast<int>(l.ids_[psi].size())) {
            l.issues_.push_back({"projection.total", "projection " + pair + " undefined at " + l.ids_[phi][i]});
            map[i] = -1;
          }
      }
    // Composite projections along the canonical path (lowest atom removed first).
    const int n = l.state_count();
    l.proj_.assign(static_cast<std::size_t>(n) * spaces, -1);
    for (int g = 0; g < n; ++g) {
      AtomMask phi = l.space_of_[g];
      for (AtomMask psi = 0; psi < spaces; ++psi) {
        if (!below(psi, phi))
          continue;
        int cur = g;
        AtomMask cur_space = phi;
        AtomMask remove = phi & ~psi;
        while (remove && cur >= 0) {
          int a = __builtin_ctz(remove);
          remove &= remove - 1;
          int local = cur - l.offset_[cur_space];
          int next = l.cover_[cur_space][a][local];
          cur_space &= ~(AtomMask{1} << a);
          cur = next < 0 ? -1 : l.offset_[cur_space] + next;
        }
        l.proj_[static_cast<std::size_t>(g) * spaces + psi] = cur;
      }
    }
    for (auto& pv : pending_valuation_) {
      Event e{pv.space, l.empty_set()};
      for (const auto& id : pv.ids) {
        auto g = l.find_state(pv.space, id);
        if (!g)
          throw ModelError(ErrorCode::UnknownState,
                           "valuation of '" + l.atoms_[pv.atom] + "': '" + l.space_key(pv.space) + ":" + id + "'");
        e.base.set(*g);
      }
      l.valuation_[pv.atom] = std::move(e);
      valuation_set_[pv.atom] = true;
    }
    for (int a = 0; a < l.atom_count(); ++a)
      if (!valuation_set_[a]) {
        l.issues_.push_back({"valuation.missing", "atom '" + l.atoms_[a] + "' has no valuation"});
        l.valuation_[a] = Event{AtomMask{1} << a, l.empty_set()};
      }
    return std::move(lat_);
  }

private:
  int index_in(AtomMask m, const std::string& id) const {
    const auto& ids = lat_.ids_[m];
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id)
        return static_cast<int>(i);
    return -1;
  }

  struct PendingValuation {
    int atom;
    AtomMask space;
    std::vector<std::string> ids;
  };

  Lattice lat_;
  std::vector<PendingValuation> pending_valuation_;
  std::vector<bool> valuation_set_;
};

// ---------------------------------------------------------------------------
// Events.

/// The event with base space `m` whose base is X restricted to S_m.
inline Event make_event(const Lattice& l, AtomMask m, const StateSet& x) { return Event{m, x & l.space_set(m)}; }

inline Event vacuous_event(const Lattice& l, AtomMask m) { return Event{m, l.empty_set()}; }

/// S_m-up as an event (full base in S_m).
inline Event full_event(const Lattice& l, AtomMask m) { return Event{m, l.space_set(m)}; }

/// Omega, based at the meet space.
inline Event omega_event(const Lattice& l) { return full_event(l, 0); }

/// D-up: every state in a space above the base space whose projection lies in the base.
inline StateSet up_closure(const Lattice& l, const Event& e) {
  StateSet out = l.empty_set();
  for (int g = 0; g < l.state_count(); ++g) {
    if (!below(e.space, l.space_of(g)))
      continue;
    int p = l.project(g, e.space);
    if (p >= 0 && e.base.test(p))
      out.set(g);
  }
  return out;
}

/// Up-closure of an arbitrary state set (union of the up-closures of its members).
inline StateSet up_closure_of_set(const Lattice& l, const StateSet& x) {
  StateSet out = l.empty_set();
  for (int g = 0; g < l.state_count(); ++g) {
    AtomMask phi = l.space_of(g);
    for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
      int p = l.project(g, psi);
      if (p >= 0 && x.test(p)) {
        out.set(g);
        break;
      }
      if (psi == 0)
        break;
    }
  }
  return out;
}

/// omega_Psi. Throws NotComparable if Psi is not below the space of omega.
inline int project_state(const Lattice& l, int g, AtomMask psi) {
  if (!below(psi, l.space_of(g)))
    throw ModelError(ErrorCode::NotComparable,
                     "space '" + l.space_key(psi) + "' is not below the space of " + l.state_name(g));
  int p = l.project(g, psi);
  if (p < 0)
    throw ModelError(ErrorCode::UnknownState, "projection of " + l.state_name(g) + " to '" + l.space_key(psi) +
                                                  "' is undefined");
  return p;
}

/// D_Psi. Empty optional if some member cannot be projected to Psi.
inline std::optional<StateSet> project_set(const Lattice& l, const StateSet& d, AtomMask psi) {
  StateSet out = l.empty_set();
  for (auto g = d.find_first(); g != StateSet::npos; g = d.find_next(g)) {
    int gi = static_cast<int>(g);
    if (!below(psi, l.space_of(gi)))
      return std::nullopt;
    int p = l.project(gi, psi);
    if (p < 0)
      return std::nullopt;
    out.set(p);
  }
  return out;
}

/// D^Phi: the elaboration of a subset of S_Psi into the larger space S_Phi.
inline StateSet elaborate(const Lattice& l, const StateSet& d, AtomMask psi, AtomMask phi) {
  StateSet out = l.empty_set();
  for (int g = l.begin_of(phi); g < l.end_of(phi); ++g) {
    int p = l.project(g, psi);
    if (p >= 0 && d.test(p))
      out.set(g);
  }
  return out;
}

/// The unique space containing all of `s`, if there is one.
inline std::optional<AtomMask> space_of_set(const Lattice& l, const StateSet& s) {
  auto first = s.find_first();
  if (first == StateSet::npos)
    return std::nullopt;
  AtomMask m = l.space_of(static_cast<int>(first));
  for (auto g = s.find_next(first); g != StateSet::npos; g = s.find_next(g))
    if (l.space_of(static_cast<int>(g)) != m)
      return std::nullopt;
  return m;
}

inline Event event_not(const Lattice& l, const Event& e) {
  if (mutation::is(Mutation::NegationTopSpace)) {
    StateSet top = elaborate(l, e.base, e.space, l.top());
    return Event{l.top(), l.space_set(l.top()) - top};
  }
  return Event{e.space, l.space_set(e.space) - e.base};
}

/// Conjunction: intersection, based at the join of the two base spaces.
inline Event event_and(const Lattice& l, const Event& a, const Event& b) {
  AtomMask join = a.space | b.space;
  Event out{join, l.empty_set()};
  for (int g = l.begin_of(join); g < l.end_of(join); ++g) {
    int pa = l.project(g, a.space);
    int pb = l.project(g, b.space);
    if (pa >= 0 && pb >= 0 && a.base.test(pa) && b.base.test(pb))
      out.base.set(g);
  }
  return out;
}

/// Disjunction by De Morgan.
inline Event event_or(const Lattice& l, const Event& a, const Event& b) {
  return event_not(l, event_and(l, event_not(l, a), event_not(l, b)));
}

inline Event event_and(const Lattice& l, const std::vector<Event>& es) {
  if (es.empty())
    return omega_event(l);
  Event out = es.front();
  for (std::size_t i = 1; i < es.size(); ++i)
    out = event_and(l, out, es[i]);
  return out;
}

/// Up-closure inclusion E subset-of F.
inline bool event_subset(const Lattice& l, const Event& a, const Event& b) {
  return up_closure(l, a).is_subset_of(up_closure(l, b));
}

/// Turns an operator's state set X into the S(E)-based event it denotes, with
/// the vacuous fallback when X is empty.
inline Event operator_event(const Lattice& l, AtomMask base_space, const StateSet& x) {
  if (x.none())
    return vacuous_event(l, mutation::is(Mutation::VacuousFallbackDropped) ? 0 : base_space);
  return make_event(l, base_space, x);
}

/// {omega : corr(omega) subset-of up(E)}.
inline StateSet necessity_set(const Lattice& l, const Correspondence& corr, const Event& e) {
  StateSet up = up_closure(l, e);
  StateSet out = l.empty_set();
  for (int g = 0; g < l.state_count(); ++g)
    if (corr[g].is_subset_of(up))
      out.set(g);
  return out;
}

// ---------------------------------------------------------------------------
// Lattice laws.

/// Checks nonempty spaces, projection surjectivity, identity and composition,
/// and the shape of the valuation. With `relax_valuation`, v(p) may be based
/// at any space below {p}.
inline void check_lattice(const Lattice& l, Report& r, bool relax_valuation = false) {
  for (const auto& issue : l.build_issues())
    r.expect(false, issue.law, issue.witness);
  const AtomMask spaces = l.space_count();
  for (AtomMask phi = 0; phi < spaces; ++phi)
    for (AtomMask psi = 0; psi < spaces; ++psi) {
      if (!below(psi, phi) || l.size_of(phi) == 0)
        continue;
      std::vector<bool> hit(l.size_of(psi), false);
      for (int g = l.begin_of(phi); g < l.end_of(phi); ++g) {
        int p = l.project(g, psi);
        if (p >= 0)
          hit[l.local_of(p)] = true;
      }
      for (int t = 0; t < l.size_of(psi); ++t)
        r.expect(hit[t], "projection.surjective",
                 "'" + l.space_key(phi) + "->" + l.space_key(psi) + "' misses " + l.state_name(l.begin_of(psi) + t));
    }
  for (int g = 0; g < l.state_count(); ++g) {
    AtomMask phi = l.space_of(g);
    r.expect(l.project(g, phi) == g, "projection.identity", l.state_name(g));
    for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
      int gp = l.project(g, psi);
      for (AtomMask ups = psi;; ups = (ups - 1) & psi) {
        int direct = l.project(g, ups);
        int via = gp < 0 ? -1 : l.project(gp, ups);
        if (direct >= 0 && via >= 0)
          r.expect(direct == via, "projection.composition",
                   l.state_name(g) + " via '" + l.space_key(psi) + "' to '" + l.space_key(ups) + "'");
        if (ups == 0)
          break;
      }
      if (psi == 0)
        break;
    }
  }
  for (int a = 0; a < l.atom_count(); ++a) {
    const Event& v = l.valuation(a);
    AtomMask p = AtomMask{1} << a;
    bool shape = relax_valuation ? below(v.space, p) : v.space == p;
    r.expect(shape, "valuation.base-space",
             "v(" + l.atoms()[a] + ") is based at '" + l.space_key(v.space) + "'");
    r.expect(v.base.is_subset_of(l.space_set(v.space)), "valuation.base", "v(" + l.atoms()[a] + ")");
  }
}

} // namespace awarekit
