#pragma once

// Awareness structures (partitional, propositionally determined) over a
// sublanguage Phi, their satisfaction relation, surjective bounded morphisms,
// and the category of sublanguage models generated from one model.
//
// Awareness sets are stored as atom sets: a formula is in A_i(w) iff all of
// its atoms are in awareness[i][w].

#include "awarekit/error.hpp"
#include "awarekit/formula.hpp"
#include "awarekit/lattice.hpp"
#include "awarekit/mutation.hpp"
#include "awarekit/report.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace awarekit {

using WorldSet = boost::dynamic_bitset<>;

struct FHModel {
  std::vector<std::string> atoms; // the language Phi, sorted
  std::vector<std::string> agents;
  std::vector<std::string> worlds;
  std::vector<std::vector<WorldSet>> relation;  // agent -> world -> successors
  std::vector<std::vector<AtomMask>> awareness; // agent -> world -> atoms (mask over `atoms`)
  std::vector<WorldSet> valuation;              // atom -> worlds
  std::vector<std::string> stray_valuation;     // valuation keys outside Phi (reported by validate_fh)

  int world_count() const noexcept { return static_cast<int>(worlds.size()); }
  int agent_count() const noexcept { return static_cast<int>(agents.size()); }
  int atom_count() const noexcept { return static_cast<int>(atoms.size()); }

  std::optional<int> atom_index(std::string_view name) const {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
    if (it == atoms.end() || *it != name)
      return std::nullopt;
    return static_cast<int>(it - atoms.begin());
  }

  int agent_index(std::string_view name) const {
    for (std::size_t i = 0; i < agents.size(); ++i)
      if (agents[i] == name)
        return static_cast<int>(i);
    throw ModelError(ErrorCode::UnknownAgent, std::string(name));
  }

  int world_index(std::string_view id) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == id)
        return static_cast<int>(i);
    throw ModelError(ErrorCode::UnknownState, "world '" + std::string(id) + "'");
  }

  std::set<std::string> names_of(AtomMask m) const {
    std::set<std::string> out;
    for (int i = 0; i < atom_count(); ++i)
      if (m & (AtomMask{1} << i))
        out.insert(atoms[i]);
    return out;
  }

  /// Mask of `names` over this model's atoms; names outside Phi are ignored.
  AtomMask mask_within(const std::set<std::string>& names) const {
    AtomMask m = 0;
    for (const auto& n : names)
      if (auto i = atom_index(n))
        m |= AtomMask{1} << *i;
    return m;
  }

  WorldSet no_worlds() const { return WorldSet(worlds.size()); }
  WorldSet all_worlds() const { return ~no_worlds(); }
};

/// Equivalence (reflexive, transitive, Euclidean) of every R_i, constancy of
/// awareness along R_i, and valuation keys inside Phi.
inline Report validate_fh(const FHModel& k) {
  Report r;
  const int n = k.world_count();
  r.expect(n > 0, "fh.nonempty", "no worlds");
  for (const auto& a : k.stray_valuation)
    r.expect(false, "fh.valuation-atoms", "atom '" + a + "' is outside the language");
  r.expect(static_cast<int>(k.relation.size()) == k.agent_count() &&
               static_cast<int>(k.awareness.size()) == k.agent_count(),
           "fh.agents", "one relation and awareness function per agent");
  if (!r.ok())
    return r;
  for (int i = 0; i < k.agent_count(); ++i) {
    const auto& rel = k.relation[i];
    const std::string who = "agent " + k.agents[i];
    for (int w = 0; w < n; ++w) {
      r.expect(rel[w].test(w), "fh.reflexivity", who + ", world " + k.worlds[w]);
      for (auto t = rel[w].find_first(); t != WorldSet::npos; t = rel[w].find_next(t)) {
        r.expect(rel[t].is_subset_of(rel[w]), "fh.transitivity", who + ", worlds " + k.worlds[w] + " -> " + k.worlds[t]);
        // Euclidean: (w,t), (w,u) in R imply (t,u) in R.
        r.expect(rel[w].is_subset_of(rel[t]), "fh.euclideaness", who + ", worlds " + k.worlds[w] + " -> " + k.worlds[t]);
        r.expect(k.awareness[i][t] == k.awareness[i][w], "fh.awareness-constancy",
                 who + ", worlds " + k.worlds[w] + " -> " + k.worlds[t]);
      }
    }
  }
  return r;
}

/// Truth sets of formulas in one FH model, memoized per subformula.
class FhEvaluator {
public:
  explicit FhEvaluator(const FHModel& k) : k_(k) {}

  /// {w : K, w |= f}. Throws UndefinedFormula if f mentions atoms outside Phi.
  const WorldSet& extension(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end())
      return it->second;
    WorldSet out = compute(f);
    return memo_.emplace(f, std::move(out)).first->second;
  }

  bool satisfies(int world, const Formula& f) { return extension(f).test(world); }

private:
  WorldSet compute(const Formula& f) {
    switch (f.op()) {
    case Op::Top: return k_.all_worlds();
    case Op::Atom: {
      auto a = k_.atom_index(f.name());
      if (!a)
        throw ModelError(ErrorCode::UndefinedFormula, "atom '" + f.name() + "' is outside the model's language");
      return k_.valuation[*a];
    }
    case Op::Not: return ~extension(f.child());
    case Op::And: {
      WorldSet l = extension(f.left());
      return l & extension(f.right());
    }
    case Op::Implicit: return box(k_.agent_index(f.agent()), extension(f.child()));
    case Op::Aware: {
      int i = k_.agent_index(f.agent());
      extension(f.child()); // definedness check
      return aware(i, f.child());
    }
    case Op::Know: {
      int i = k_.agent_index(f.agent());
      WorldSet l = box(i, extension(f.child()));
      return l & aware(i, f.child());
    }
    }
    return k_.no_worlds();
  }

  WorldSet box(int agent, const WorldSet& inner) const {
    WorldSet out = k_.no_worlds();
    for (int w = 0; w < k_.world_count(); ++w)
      if (k_.relation[agent][w].is_subset_of(inner))
        out.set(w);
    return out;
  }

  WorldSet aware(int agent, const Formula& f) const {
    std::set<std::string> names;
    if (mutation::is(Mutation::FhAwarenessShallow))
      shallow_atoms(f, names);
    else
      collect_atoms(f, names);
    AtomMask need = k_.mask_within(names);
    WorldSet out = k_.no_worlds();
    for (int w = 0; w < k_.world_count(); ++w)
      if (below(need, k_.awareness[agent][w]))
        out.set(w);
    return out;
  }

  static void shallow_atoms(const Formula& f, std::set<std::string>& out) {
    switch (f.op()) {
    case Op::Atom: out.insert(f.name()); return;
    case Op::Not: shallow_atoms(f.child(), out); return;
    case Op::And:
      shallow_atoms(f.left(), out);
      shallow_atoms(f.right(), out);
      return;
    default: return;
    }
  }

  const FHModel& k_;
  std::unordered_map<Formula, WorldSet, FormulaHash> memo_;
};

/// K, w |= f. Throws UndefinedFormula when At(f) is not inside Phi.
inline bool fh_satisfies(const FHModel& k, int world, const Formula& f) {
  FhEvaluator ev(k);
  return ev.satisfies(world, f);
}

// ---------------------------------------------------------------------------
// Bounded morphisms.

/// Surjectivity, atomic harmony, awareness consistency, homomorphism and back
/// for `map`: W_src -> W_dst.
inline Report check_bounded_morphism(const FHModel& src, const FHModel& dst, const std::vector<int>& map) {
  Report r;
  for (const auto& a : dst.atoms)
    r.expect(src.atom_index(a).has_value(), "morphism.language", "target atom '" + a + "' not in source language");
  r.expect(src.agents == dst.agents, "morphism.agents", "agent sets differ");
  r.expect(static_cast<int>(map.size()) == src.world_count(), "morphism.total", "map size");
  if (!r.ok())
    return r;
  for (int w = 0; w < src.world_count(); ++w)
    if (!r.expect(map[w] >= 0 && map[w] < dst.world_count(), "morphism.total", "world " + src.worlds[w]))
      return r;
  std::vector<bool> hit(dst.world_count(), false);
  for (int w = 0; w < src.world_count(); ++w)
    hit[map[w]] = true;
  for (int t = 0; t < dst.world_count(); ++t)
    r.expect(hit[t], "morphism.surjectivity", "target world " + dst.worlds[t] + " is not hit");
  for (int w = 0; w < src.world_count(); ++w) {
    const int fw = map[w];
    for (int a = 0; a < dst.atom_count(); ++a) {
      int sa = *src.atom_index(dst.atoms[a]);
      r.expect(src.valuation[sa].test(w) == dst.valuation[a].test(fw), "morphism.atomic-harmony",
               "world " + src.worlds[w] + ", atom " + dst.atoms[a]);
    }
    for (int i = 0; i < src.agent_count(); ++i) {
      const std::string who = "agent " + src.agents[i] + ", world " + src.worlds[w];
      AtomMask restricted = dst.mask_within(src.names_of(src.awareness[i][w]));
      r.expect(restricted == dst.awareness[i][fw], "morphism.awareness-consistency", who);
      const auto& rel = src.relation[i][w];
      for (auto t = rel.find_first(); t != WorldSet::npos; t = rel.find_next(t))
        r.expect(dst.relation[i][fw].test(map[t]), "morphism.homomorphism", who + " -> " + src.worlds[t]);
      const auto& drel = dst.relation[i][fw];
      for (auto t2 = drel.find_first(); t2 != WorldSet::npos; t2 = drel.find_next(t2)) {
        bool found = false;
        for (auto t = rel.find_first(); t != WorldSet::npos && !found; t = rel.find_next(t))
          found = map[t] == static_cast<int>(t2);
        r.expect(found, "morphism.back", who + ", target successor " + dst.worlds[t2]);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Categories of sublanguage models.

struct FHCategory {
  std::vector<std::string> atoms; // At, sorted
  std::vector<FHModel> models;    // indexed by atom mask over At
  std::map<std::pair<AtomMask, AtomMask>, std::vector<int>> morphisms; // (Phi, Psi) with Psi below Phi

  AtomMask top() const noexcept { return static_cast<AtomMask>(models.size() - 1); }
  const FHModel& model(AtomMask m) const { return models[m]; }
  const std::vector<int>& morphism(AtomMask phi, AtomMask psi) const { return morphisms.at({phi, psi}); }

  std::string key(AtomMask m) const {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (m & (AtomMask{1} << i)) {
        if (!out.empty())
          out += ',';
        out += atoms[i];
      }
    return out;
  }
};

struct CategoryOptions {
  /// Quotient every proper sublanguage model by modal equivalence over its language.
  bool minimize = false;
};

namespace detail {

/// Restriction of k to the sublanguage given by `mask` (over k's atoms): same
/// worlds and relations, valuation and awareness cut down to the sublanguage.
inline FHModel restrict_language(const FHModel& k, AtomMask mask) {
  FHModel out;
  out.agents = k.agents;
  out.worlds = k.worlds;
  out.relation = k.relation;
  std::vector<int> kept;
  for (int a = 0; a < k.atom_count(); ++a)
    if (mask & (AtomMask{1} << a)) {
      out.atoms.push_back(k.atoms[a]);
      out.valuation.push_back(k.valuation[a]);
      kept.push_back(a);
    }
  out.awareness.assign(k.agent_count(), std::vector<AtomMask>(k.world_count(), 0));
  for (int i = 0; i < k.agent_count(); ++i)
    for (int w = 0; w < k.world_count(); ++w)
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (k.awareness[i][w] & (AtomMask{1} << kept[j]))
          out.awareness[i][w] |= AtomMask{1} << j;
  return out;
}

/// Classes of modal equivalence (equivalently bisimilarity on finite models)
/// for the language of `k`. Returns the class index of every world, with
/// classes numbered by first occurrence.
inline std::vector<int> modal_classes(const FHModel& k) {
  const int n = k.world_count();
  std::vector<int> cls(n, 0);
  auto renumber = [n](const std::vector<std::vector<int>>& keys) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> out(n);
    for (int w = 0; w < n; ++w) {
      auto [it, fresh] = ids.emplace(keys[w], static_cast<int>(ids.size()));
      out[w] = it->second;
    }
    return std::make_pair(out, static_cast<int>(ids.size()));
  };
  std::vector<std::vector<int>> keys(n);
  for (int w = 0; w < n; ++w) {
    for (int a = 0; a < k.atom_count(); ++a)
      keys[w].push_back(k.valuation[a].test(w) ? 1 : 0);
    for (int i = 0; i < k.agent_count(); ++i)
      keys[w].push_back(static_cast<int>(k.awareness[i][w]));
  }
  auto [current, count] = renumber(keys);
  cls = current;
  while (true) {
    for (int w = 0; w < n; ++w) {
      keys[w].assign(1, cls[w]);
      for (int i = 0; i < k.agent_count(); ++i) {
        std::set<int> succ;
        const auto& rel = k.relation[i][w];
        for (auto t = rel.find_first(); t != WorldSet::npos; t = rel.find_next(t))
          succ.insert(cls[t]);
        keys[w].push_back(-1);
        keys[w].insert(keys[w].end(), succ.begin(), succ.end());
      }
    }
    auto [next, next_count] = renumber(keys);
    cls = next;
    if (next_count == count)
      break;
    count = next_count;
  }
  return cls;
}

inline FHModel quotient(const FHModel& k, const std::vector<int>& cls) {
  int classes = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> rep(classes, -1);
  for (int w = 0; w < k.world_count(); ++w)
    if (rep[cls[w]] < 0)
      rep[cls[w]] = w;
  FHModel out;
  out.atoms = k.atoms;
  out.agents = k.agents;
  for (int c = 0; c < classes; ++c)
    out.worlds.push_back(k.worlds[rep[c]]);
  out.relation.assign(k.agent_count(), std::vector<WorldSet>(classes, WorldSet(classes)));
  out.awareness.assign(k.agent_count(), std::vector<AtomMask>(classes, 0));
  for (int i = 0; i < k.agent_count(); ++i) {
    for (int w = 0; w < k.world_count(); ++w) {
      const auto& rel = k.relation[i][w];
      for (auto t = rel.find_first(); t != WorldSet::npos; t = rel.find_next(t))
        out.relation[i][cls[w]].set(cls[t]);
    }
    for (int c = 0; c < classes; ++c)
      out.awareness[i][c] = k.awareness[i][rep[c]];
  }
  out.valuation.assign(k.atom_count(), WorldSet(classes));
  for (int a = 0; a < k.atom_count(); ++a)
    for (int c = 0; c < classes; ++c)
      out.valuation[a][c] = k.valuation[a].test(rep[c]);
  return out;
}

} // namespace detail

/// The category of sublanguage models of k, one per subset of k's atoms.
///
/// Default construction: every K_Psi is a copy of k's worlds and relations
/// with valuation and awareness restricted to Psi, and every morphism is the
/// identity on world ids. With `minimize`, each proper K_Psi is quotiented by
/// modal equivalence over L_Psi and morphisms send a class to the class that
/// contains it. The top model is always k itself.
inline FHCategory build_category(const FHModel& k, const CategoryOptions& opts = {}) {
  Report pre = validate_fh(k);
  if (!pre.ok())
    throw ModelError(ErrorCode::PreconditionFailed, "FH model fails validation: " + pre.violations.front().law);
  FHCategory c;
  c.atoms = k.atoms;
  const AtomMask spaces = AtomMask{1} << k.atom_count();
  const AtomMask top = spaces - 1;
  const int n = k.world_count();
  std::vector<std::vector<int>> cls(spaces); // world of k -> world index in K_Psi
  c.models.reserve(spaces);
  for (AtomMask psi = 0; psi < spaces; ++psi) {
    FHModel sub = detail::restrict_language(k, psi);
    if (opts.minimize && psi != top) {
      cls[psi] = detail::modal_classes(sub);
      sub = detail::quotient(sub, cls[psi]);
    } else {
      cls[psi].resize(n);
      for (int w = 0; w < n; ++w)
        cls[psi][w] = w;
    }
    c.models.push_back(std::move(sub));
  }
  for (AtomMask phi = 0; phi < spaces; ++phi)
    for (AtomMask psi = 0; psi < spaces; ++psi) {
      if (!below(psi, phi))
        continue;
      std::vector<int> map(c.models[phi].world_count(), -1);
      for (int w = 0; w < n; ++w) {
        int from = cls[phi][w];
        int to = cls[psi][w];
        if (map[from] >= 0 && map[from] != to)
          throw ModelError(ErrorCode::TransformInvariantBroken,
                           "modal classes of '" + c.key(phi) + "' do not refine those of '" + c.key(psi) + "'");
        map[from] = to;
      }
      c.morphisms[{phi, psi}] = std::move(map);
    }
  if (mutation::is(Mutation::CategoryAwarenessBroken) && k.atom_count() > 0 && k.agent_count() > 0) {
    AtomMask victim = 1; // K_{first atom}
    auto& aw = c.models[victim].awareness[0][0];
    aw ^= 1;
  }
  return c;
}

/// Every model validates, morphisms are surjective bounded morphisms,
/// identities are identities, and composition holds.
inline Report check_category(const FHCategory& c) {
  Report r;
  const AtomMask spaces = static_cast<AtomMask>(c.models.size());
  for (AtomMask phi = 0; phi < spaces; ++phi) {
    r.merge(validate_fh(c.models[phi]), "K[" + c.key(phi) + "].");
    r.expect(c.models[phi].atoms == std::vector<std::string>(c.models[phi].atoms.begin(), c.models[phi].atoms.end()) &&
                 c.models[phi].mask_within(std::set<std::string>(c.atoms.begin(), c.atoms.end())) ==
                     (AtomMask{1} << c.models[phi].atom_count()) - 1 &&
                 c.models[phi].atom_count() == popcount(phi),
             "category.language", "K[" + c.key(phi) + "]");
  }
  for (AtomMask phi = 0; phi < spaces; ++phi)
    for (AtomMask psi = 0; psi < spaces; ++psi) {
      if (!below(psi, phi))
        continue;
      auto it = c.morphisms.find({phi, psi});
      if (!r.expect(it != c.morphisms.end(), "category.morphism-missing", c.key(phi) + "->" + c.key(psi)))
        continue;
      const auto& f = it->second;
      r.merge(check_bounded_morphism(c.models[phi], c.models[psi], f), "f[" + c.key(phi) + "->" + c.key(psi) + "].");
      if (phi == psi)
        for (int w = 0; w < static_cast<int>(f.size()); ++w)
          r.expect(f[w] == w, "category.identity", c.key(phi) + ", world " + c.models[phi].worlds[w]);
      for (AtomMask ups = psi;; ups = (ups - 1) & psi) {
        auto a = c.morphisms.find({psi, ups});
        auto b = c.morphisms.find({phi, ups});
        if (a != c.morphisms.end() && b != c.morphisms.end())
          for (int w = 0; w < static_cast<int>(f.size()); ++w) {
            int via = (f[w] >= 0 && f[w] < static_cast<int>(a->second.size())) ? a->second[f[w]] : -1;
            r.expect(via == b->second[w], "category.composition",
                     c.key(phi) + "->" + c.key(psi) + "->" + c.key(ups) + ", world " + c.models[phi].worlds[w]);
          }
        if (ups == 0)
          break;
      }
    }
  return r;
}

} // namespace awarekit
