#pragma once

// Transformations between the model families:
//   t_transform           category of FH models -> implicit-knowledge-based HMS model
//   hms_transform         FH model -> complemented HMS model (category, T, derived Pi*)
//   truncated_hms_transform  FH model -> implicit-knowledge-based HMS model (category, T)
//   fh_transform          complemented HMS model -> FH model over the top space
//   fh_star_transform     implicit-knowledge-based HMS model -> FH model over the top space
//
// States keep their ids across transforms: world w of K_Phi becomes state
// "Phi:w" and back.

#include "awarekit/fh.hpp"
#include "awarekit/implicit.hpp"

#include <string>
#include <vector>

namespace awarekit {

namespace detail {

inline int category_atom(const FHCategory& c, const std::string& name) {
  auto it = std::lower_bound(c.atoms.begin(), c.atoms.end(), name);
  return static_cast<int>(it - c.atoms.begin());
}

/// Converts a mask over `k`'s own atoms into a mask over the category's atoms.
inline AtomMask to_global(const FHCategory& c, const FHModel& k, AtomMask local) {
  AtomMask out = 0;
  for (int a = 0; a < k.atom_count(); ++a)
    if (local & (AtomMask{1} << a))
      out |= AtomMask{1} << category_atom(c, k.atoms[a]);
  return out;
}

[[noreturn]] inline void broken(const std::string& what, const Report& r) {
  throw ModelError(ErrorCode::TransformInvariantBroken,
                   what + ": " + r.violations.front().law + " [" + r.violations.front().witness + "]");
}

} // namespace detail

/// Spaces are the worlds of the sublanguage models, projections are the
/// morphisms, Lambda* comes from the relations, alpha from the awareness atom
/// sets, and v(p) is the union of the V_Phi(p), based at S_{p}.
inline ImplicitHMSModel t_transform(const FHCategory& c) {
  const FHModel& topm = c.models.back();
  LatticeBuilder b(c.atoms, topm.agents);
  const AtomMask spaces = static_cast<AtomMask>(c.models.size());
  for (AtomMask phi = 0; phi < spaces; ++phi)
    b.add_space(phi, c.models[phi].worlds);
  for (AtomMask phi = 0; phi < spaces; ++phi)
    for (int a = 0; a < static_cast<int>(c.atoms.size()); ++a)
      if (phi & (AtomMask{1} << a)) {
        auto it = c.morphisms.find({phi, phi & ~(AtomMask{1} << a)});
        if (it != c.morphisms.end())
          b.add_projection(phi, a, it->second);
      }
  for (int a = 0; a < static_cast<int>(c.atoms.size()); ++a) {
    AtomMask p = AtomMask{1} << a;
    const FHModel& kp = c.models[p];
    std::vector<std::string> base;
    for (int w = 0; w < kp.world_count(); ++w)
      if (kp.valuation[0].test(w))
        base.push_back(kp.worlds[w]);
    b.set_valuation(a, p, std::move(base));
  }
  ImplicitHMSModel im{b.build(), {}, {}};
  const Lattice& l = im.frame;
  const int agents = l.agent_count();
  im.lambda_star.assign(agents, Correspondence(l.state_count(), l.empty_set()));
  im.alpha.assign(agents, std::vector<AtomMask>(l.state_count(), 0));
  for (AtomMask phi = 0; phi < spaces; ++phi) {
    const FHModel& k = c.models[phi];
    const int off = l.begin_of(phi);
    for (int i = 0; i < agents; ++i)
      for (int w = 0; w < k.world_count(); ++w) {
        const auto& rel = k.relation[i][w];
        for (auto t = rel.find_first(); t != WorldSet::npos; t = rel.find_next(t))
          im.lambda_star[i][off + w].set(off + static_cast<int>(t));
        im.alpha[i][off + w] = detail::to_global(c, k, k.awareness[i][w]);
      }
  }
  // v(p) as given must coincide with the union of the V_Phi(p).
  Report r;
  for (int a = 0; a < l.atom_count(); ++a) {
    StateSet uni = l.empty_set();
    for (AtomMask phi = 0; phi < spaces; ++phi) {
      const FHModel& k = c.models[phi];
      auto local = k.atom_index(c.atoms[a]);
      if (!local)
        continue;
      for (int w = 0; w < k.world_count(); ++w)
        if (k.valuation[*local].test(w))
          uni.set(l.begin_of(phi) + w);
    }
    r.expect(uni == up_closure(l, l.valuation(a)), "t-transform.valuation-union", "atom " + c.atoms[a]);
  }
  r.merge(validate_implicit(im));
  if (!r.ok())
    detail::broken("T-transform output", r);
  return im;
}

struct HmsTransformOptions {
  bool minimize = false; // quotient proper sublanguage models (see build_category)
};

/// Category and T-transform only.
inline ImplicitHMSModel truncated_hms_transform(const FHModel& k, const HmsTransformOptions& opts = {}) {
  return t_transform(build_category(k, {opts.minimize}));
}

/// Category, T-transform, derived Pi*, then alpha dropped.
inline ComplementedHMSModel hms_transform(const FHModel& k, const HmsTransformOptions& opts = {}) {
  ImplicitHMSModel im = truncated_hms_transform(k, opts);
  ComplementedHMSModel c;
  try {
    c = derive_pi_star(im);
  } catch (const ModelError& e) {
    throw ModelError(ErrorCode::TransformInvariantBroken, std::string("HMS transform: ") + e.what());
  }
  Report r = validate_lambda(c);
  if (!r.ok())
    detail::broken("HMS transform output", r);
  return c;
}

struct FhTransformOptions {
  bool check = true; // validate the output and throw TransformInvariantBroken on failure
};

namespace detail {

/// Worlds, relations and valuation from the top space; awareness left empty.
inline FHModel top_space_frame(const Lattice& l, const std::vector<Correspondence>& lam) {
  FHModel k;
  const AtomMask top = l.top();
  const int off = l.begin_of(top);
  const int n = l.size_of(top);
  k.atoms = l.atoms();
  k.agents = l.agents();
  k.worlds = l.ids_of(top);
  k.relation.assign(l.agent_count(), std::vector<WorldSet>(n, WorldSet(n)));
  k.awareness.assign(l.agent_count(), std::vector<AtomMask>(n, 0));
  for (int i = 0; i < l.agent_count(); ++i)
    for (int w = 0; w < n; ++w) {
      const auto& cell = lam[i][off + w];
      for (auto t = cell.find_first(); t != StateSet::npos; t = cell.find_next(t))
        if (l.space_of(static_cast<int>(t)) == top)
          k.relation[i][w].set(static_cast<int>(t) - off);
    }
  if (mutation::is(Mutation::FhTransformDropsPair)) {
    bool done = false;
    for (int i = 0; i < l.agent_count() && !done; ++i)
      for (int w = 0; w < n && !done; ++w)
        for (auto t = k.relation[i][w].find_first(); t != WorldSet::npos && !done; t = k.relation[i][w].find_next(t))
          if (static_cast<int>(t) != w) {
            k.relation[i][w].reset(t);
            done = true;
          }
  }
  k.valuation.assign(l.atom_count(), WorldSet(n));
  for (int a = 0; a < l.atom_count(); ++a) {
    StateSet v = up_closure(l, l.valuation(a));
    for (int w = 0; w < n; ++w)
      k.valuation[a][w] = v.test(off + w);
  }
  return k;
}

} // namespace detail

/// Top space, relations from Lambda, awareness from the space of Pi.
inline FHModel fh_transform(const ComplementedHMSModel& c, const FhTransformOptions& opts = {}) {
  require_valid(validate_lambda(c), "complemented HMS model");
  const Lattice& l = c.lattice();
  FHModel k = detail::top_space_frame(l, c.lambda);
  const int off = l.begin_of(l.top());
  for (int i = 0; i < l.agent_count(); ++i)
    for (int w = 0; w < k.world_count(); ++w)
      k.awareness[i][w] = possibility_space(l, c.base.pi[i], off + w);
  if (opts.check) {
    Report r = validate_fh(k);
    if (!r.ok())
      detail::broken("FH transform output", r);
  }
  return k;
}

/// Top space, relations from Lambda*, awareness from alpha.
inline FHModel fh_star_transform(const ImplicitHMSModel& im, const FhTransformOptions& opts = {}) {
  require_valid(validate_implicit(im), "implicit-knowledge-based HMS model");
  const Lattice& l = im.frame;
  FHModel k = detail::top_space_frame(l, im.lambda_star);
  const int off = l.begin_of(l.top());
  for (int i = 0; i < l.agent_count(); ++i)
    for (int w = 0; w < k.world_count(); ++w)
      k.awareness[i][w] = im.alpha[i][off + w];
  if (opts.check) {
    Report r = validate_fh(k);
    if (!r.ok())
      detail::broken("FH* transform output", r);
  }
  return k;
}

} // namespace awarekit
