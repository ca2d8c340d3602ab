#pragma once

// Modal-equivalence checks by bounded formula enumeration: invariance of
// satisfaction along the morphisms of a category of FH models (and the
// join/meet equivalences that follow), and agreement between a model and
// its transform in each of the four directions.

#include "awarekit/enumerate.hpp"
#include "awarekit/semantics.hpp"
#include "awarekit/transforms.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace awarekit {

/// Direction of a transform, as named on the command line.
enum class Via { Hms, ImplicitHms, Fh, FhStar };

inline std::string_view to_string(Via v) {
  switch (v) {
  case Via::Hms: return "hms";
  case Via::ImplicitHms: return "implicit-hms";
  case Via::Fh: return "fh";
  case Via::FhStar: return "fh-star";
  }
  return "?";
}

inline std::optional<Via> parse_via(std::string_view s) {
  for (Via v : {Via::Hms, Via::ImplicitHms, Via::Fh, Via::FhStar})
    if (to_string(v) == s)
      return v;
  return std::nullopt;
}

namespace detail {

/// Stops recording after `limit` violations so broken models do not flood reports.
struct Limited {
  Report& r;
  std::size_t limit = 25;
  std::size_t seen = 0;

  bool expect(bool holds, const std::string& law, const std::function<std::string()>& witness) {
    ++r.checks;
    if (holds)
      return true;
    if (++seen <= limit)
      r.add(law, witness());
    else if (seen == limit + 1)
      r.note("further violations suppressed");
    return false;
  }
};

inline AtomMask mask_in(const std::vector<std::string>& universe, const Formula& f) {
  AtomMask m = 0;
  for (const auto& name : atoms(f)) {
    auto it = std::lower_bound(universe.begin(), universe.end(), name);
    if (it == universe.end() || *it != name)
      throw ModelError(ErrorCode::UnknownAtom, name);
    m |= AtomMask{1} << (it - universe.begin());
  }
  return m;
}

inline std::string mask_bits(AtomMask m) { return std::to_string(m) + "#"; }

} // namespace detail

// ---------------------------------------------------------------------------
// Categories.

/// Category laws; satisfaction of every enumerated formula preserved along
/// every morphism whose target language contains it; and, for every nonempty
/// family of sublanguages, equivalence of each member with the join and meet
/// models. Families are enumerated explicitly for |At| <= 4; above that the
/// check reduces to the comparable pairs, which is what every family needs.
inline Report category_equivalence_suite(const FHCategory& c, const EnumOptions& opts = {}) {
  Report r = check_category(c);
  detail::Limited lim{r};
  const AtomMask spaces = static_cast<AtomMask>(c.models.size());
  std::vector<std::unique_ptr<FhEvaluator>> ev;
  for (const auto& k : c.models)
    ev.push_back(std::make_unique<FhEvaluator>(k));
  auto sig = [&](const Formula& f, std::string& out) {
    AtomMask m = detail::mask_in(c.atoms, f);
    out += detail::mask_bits(m);
    for (AtomMask phi = 0; phi < spaces; ++phi)
      if (below(m, phi))
        append_bits(ev[phi]->extension(f), out);
  };
  const auto formulas = enumerate_formulas(c.atoms, c.models.back().agents, opts, sig);
  r.note(std::to_string(formulas.size()) + " formulas enumerated");
  std::map<std::pair<AtomMask, AtomMask>, bool> pair_ok;
  for (AtomMask phi = 0; phi < spaces; ++phi)
    for (AtomMask psi = 0; psi < spaces; ++psi)
      if (below(psi, phi))
        pair_ok[{phi, psi}] = true;
  for (const auto& f : formulas) {
    AtomMask m = detail::mask_in(c.atoms, f);
    for (auto& [pair, ok] : pair_ok) {
      auto [phi, psi] = pair;
      if (!below(m, psi))
        continue;
      auto it = c.morphisms.find(pair);
      if (it == c.morphisms.end())
        continue;
      const auto& map = it->second;
      const WorldSet& src = ev[phi]->extension(f);
      const WorldSet& dst = ev[psi]->extension(f);
      for (int w = 0; w < static_cast<int>(map.size()); ++w) {
        if (map[w] < 0 || map[w] >= static_cast<int>(dst.size()))
          continue;
        bool same = src.test(w) == dst.test(map[w]);
        ok = ok && same;
        lim.expect(same, "sublanguage-invariance", [&] {
          return render(f) + " at " + c.key(phi) + ":" + c.models[phi].worlds[w] + " vs " + c.key(psi) + ":" +
                 c.models[psi].worlds[map[w]];
        });
      }
    }
  }
  const int n = static_cast<int>(c.atoms.size());
  auto check_family = [&](const std::vector<AtomMask>& fam) {
    AtomMask join = 0, meet = spaces - 1;
    for (AtomMask s : fam) {
      join |= s;
      meet &= s;
    }
    for (AtomMask s : fam) {
      lim.expect(pair_ok[{join, s}], "join-equivalence",
                 [&] { return "join '" + c.key(join) + "' vs member '" + c.key(s) + "'"; });
      lim.expect(pair_ok[{s, meet}], "meet-equivalence",
                 [&] { return "member '" + c.key(s) + "' vs meet '" + c.key(meet) + "'"; });
    }
  };
  if (n <= 4) {
    const std::uint64_t families = std::uint64_t{1} << spaces;
    std::vector<AtomMask> fam;
    for (std::uint64_t bits = 1; bits < families; ++bits) {
      fam.clear();
      for (AtomMask s = 0; s < spaces; ++s)
        if (bits & (std::uint64_t{1} << s))
          fam.push_back(s);
      check_family(fam);
    }
  } else {
    r.note("families of sublanguages reduced to comparable pairs");
    for (auto& [pair, ok] : pair_ok)
      check_family({pair.first, pair.second});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Model versus transform.

namespace detail {

template <typename HmsModel>
Report fh_vs_hms(const FHModel& k, const HmsModel& m, const EnumOptions& opts, const std::string& law) {
  Report r;
  Limited lim{r};
  HmsSemantics s(m);
  const Lattice& l = s.lattice();
  if (!r.expect(k.atoms == l.atoms() && k.agents == l.agents(), law + ".signature", "atoms or agents differ"))
    return r;
  std::vector<int> state(k.world_count(), -1);
  for (int w = 0; w < k.world_count(); ++w) {
    auto g = l.find_state(l.top(), k.worlds[w]);
    if (r.expect(g.has_value(), law + ".alignment", "world " + k.worlds[w] + " has no top-space state"))
      state[w] = *g;
  }
  if (!r.ok())
    return r;
  FhEvaluator ev(k);
  auto sig = [&](const Formula& f, std::string& out) {
    out += mask_bits(mask_in(k.atoms, f));
    append_bits(ev.extension(f), out);
    append_bits(s.truth_set(f), out);
    append_bits(s.truth_set(Formula::negation(f)), out);
  };
  const auto formulas = enumerate_formulas(k.atoms, k.agents, opts, sig);
  r.note(std::to_string(formulas.size()) + " formulas enumerated");
  for (const auto& f : formulas) {
    AtomMask need = mask_in(k.atoms, f);
    const WorldSet& ext = ev.extension(f);
    for (int w = 0; w < k.world_count(); ++w) {
      TruthValue want = ext.test(w) ? TruthValue::True : TruthValue::False;
      for (AtomMask phi = need; phi <= l.top(); phi = (phi + 1) | need) {
        int g = l.project(state[w], phi);
        TruthValue got = g < 0 ? TruthValue::Undefined : s.satisfies(g, f);
        lim.expect(got == want, law, [&] {
          return render(f) + " at world " + k.worlds[w] + ": FH " + std::string(to_string(want)) + ", HMS at " +
                 (g < 0 ? "'" + l.space_key(phi) + "'" : l.state_name(g)) + " " + std::string(to_string(got));
        });
        if (phi == l.top())
          break;
      }
    }
  }
  return r;
}

template <typename HmsModel>
Report hms_vs_fh(const HmsModel& m, const FHModel& k, const EnumOptions& opts, const std::string& law) {
  Report r;
  Limited lim{r};
  HmsSemantics s(m);
  const Lattice& l = s.lattice();
  if (!r.expect(k.atoms == l.atoms() && k.agents == l.agents(), law + ".signature", "atoms or agents differ"))
    return r;
  const AtomMask top = l.top();
  std::vector<int> world(l.size_of(top), -1);
  for (int g = l.begin_of(top); g < l.end_of(top); ++g) {
    int w = -1;
    for (int x = 0; x < k.world_count(); ++x)
      if (k.worlds[x] == l.id_of(g))
        w = x;
    if (r.expect(w >= 0, law + ".alignment", "state " + l.state_name(g) + " has no world"))
      world[g - l.begin_of(top)] = w;
  }
  if (!r.ok())
    return r;
  FhEvaluator ev(k);
  auto sig = [&](const Formula& f, std::string& out) {
    out += mask_bits(mask_in(k.atoms, f));
    append_bits(ev.extension(f), out);
    append_bits(s.truth_set(f), out);
    append_bits(s.truth_set(Formula::negation(f)), out);
  };
  const auto formulas = enumerate_formulas(k.atoms, k.agents, opts, sig);
  r.note(std::to_string(formulas.size()) + " formulas enumerated");
  for (const auto& f : formulas) {
    const WorldSet& ext = ev.extension(f);
    for (int g = l.begin_of(top); g < l.end_of(top); ++g) {
      int w = world[g - l.begin_of(top)];
      TruthValue want = ext.test(w) ? TruthValue::True : TruthValue::False;
      TruthValue got = s.satisfies(g, f);
      lim.expect(got == want, law, [&] {
        return render(f) + " at " + l.state_name(g) + ": HMS " + std::string(to_string(got)) + ", FH " +
               std::string(to_string(want));
      });
    }
  }
  return r;
}

} // namespace detail

/// K_At, w |= f iff the HMS transform satisfies f at w_Phi, for every Phi containing At(f).
inline Report equivalence_fh_to_hms(const FHModel& k, const ComplementedHMSModel& m, const EnumOptions& opts = {}) {
  return detail::fh_vs_hms(k, m, opts, "fh-to-hms");
}

/// As above, for the truncated transform.
inline Report equivalence_fh_to_implicit(const FHModel& k, const ImplicitHMSModel& m, const EnumOptions& opts = {}) {
  return detail::fh_vs_hms(k, m, opts, "fh-to-implicit-hms");
}

/// M, omega |= f iff FH(M), omega |= f for every omega in the top space.
inline Report equivalence_hms_to_fh(const ComplementedHMSModel& m, const FHModel& k, const EnumOptions& opts = {}) {
  return detail::hms_vs_fh(m, k, opts, "hms-to-fh");
}

inline Report equivalence_implicit_to_fh(const ImplicitHMSModel& m, const FHModel& k, const EnumOptions& opts = {}) {
  return detail::hms_vs_fh(m, k, opts, "implicit-hms-to-fh-star");
}

/// Two FH models over the same language agree on every enumerated formula at
/// every world, matching worlds by id.
inline Report fh_agreement(const FHModel& a, const FHModel& b, const EnumOptions& opts = {}) {
  Report r;
  detail::Limited lim{r};
  if (!r.expect(a.atoms == b.atoms && a.agents == b.agents && a.world_count() == b.world_count(), "fh-agreement.signature",
                "atoms, agents or world count differ"))
    return r;
  std::vector<int> match(a.world_count(), -1);
  for (int w = 0; w < a.world_count(); ++w) {
    for (int x = 0; x < b.world_count(); ++x)
      if (b.worlds[x] == a.worlds[w])
        match[w] = x;
    if (!r.expect(match[w] >= 0, "fh-agreement.alignment", "world " + a.worlds[w]))
      return r;
  }
  FhEvaluator ea(a), eb(b);
  auto sig = [&](const Formula& f, std::string& out) {
    out += detail::mask_bits(detail::mask_in(a.atoms, f));
    append_bits(ea.extension(f), out);
    append_bits(eb.extension(f), out);
  };
  for (const auto& f : enumerate_formulas(a.atoms, a.agents, opts, sig)) {
    const WorldSet& x = ea.extension(f);
    const WorldSet& y = eb.extension(f);
    for (int w = 0; w < a.world_count(); ++w)
      lim.expect(x.test(w) == y.test(match[w]), "fh-agreement", [&] { return render(f) + " at world " + a.worlds[w]; });
  }
  return r;
}

} // namespace awarekit
