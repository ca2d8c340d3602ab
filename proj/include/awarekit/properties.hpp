#pragma once

// Exhaustive checks of the algebraic laws of the explicit knowledge and
// awareness operators, the implicit knowledge operator, and the operators of
// implicit-knowledge-based models, over a finite basis of events.
//
// Equalities compare events as (base space, base); inclusions compare
// up-closures.

#include "awarekit/implicit.hpp"

#include <functional>
#include <string>
#include <vector>

namespace awarekit {

struct BasisOptions {
  bool spaces = true;           // S_Phi-up and the vacuous event of every space
  bool pairwise = true;         // conjunctions of valuation literals
  bool operator_images = true;  // K/A (and L) of valuation literals, for every agent
  std::size_t cap = 48;         // maximum number of events
  std::size_t family_pool = 10; // events drawn on for conjunctions of families of size 2 and 3
};

namespace detail {

inline void push_unique(std::vector<Event>& out, Event e, std::size_t cap) {
  if (out.size() >= cap)
    return;
  for (const auto& x : out)
    if (x == e)
      return;
  out.push_back(std::move(e));
}

} // namespace detail

/// Omega, valuation events and their negations, optionally space events and
/// pairwise conjunctions, then `images(literal)` for every literal.
inline std::vector<Event> event_basis(const Lattice& l, const BasisOptions& opts,
                                      const std::function<std::vector<Event>(const Event&)>& images = {}) {
  std::vector<Event> out;
  detail::push_unique(out, omega_event(l), opts.cap);
  std::vector<Event> literals;
  for (int a = 0; a < l.atom_count(); ++a) {
    literals.push_back(l.valuation(a));
    literals.push_back(event_not(l, l.valuation(a)));
  }
  for (const auto& e : literals)
    detail::push_unique(out, e, opts.cap);
  if (opts.spaces)
    for (AtomMask m = 0; m < l.space_count(); ++m) {
      detail::push_unique(out, full_event(l, m), opts.cap);
      detail::push_unique(out, vacuous_event(l, m), opts.cap);
    }
  if (opts.pairwise)
    for (std::size_t i = 0; i < literals.size(); ++i)
      for (std::size_t j = i + 1; j < literals.size(); ++j)
        detail::push_unique(out, event_and(l, literals[i], literals[j]), opts.cap);
  if (opts.operator_images && images)
    for (const auto& e : literals)
      for (auto& img : images(e))
        detail::push_unique(out, std::move(img), opts.cap);
  return out;
}

namespace detail {

/// Every subfamily of size 2 or 3 of the first `pool` events.
inline std::vector<std::vector<const Event*>> families(const std::vector<Event>& basis, std::size_t pool) {
  std::vector<std::vector<const Event*>> out;
  std::size_t n = std::min(pool, basis.size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      out.push_back({&basis[a], &basis[b]});
      for (std::size_t c = b + 1; c < n; ++c)
        out.push_back({&basis[a], &basis[b], &basis[c]});
    }
  return out;
}

inline Event conj_of(const Lattice& l, const std::vector<const Event*>& fam) {
  Event out = *fam.front();
  for (std::size_t i = 1; i < fam.size(); ++i)
    out = event_and(l, out, *fam[i]);
  return out;
}

inline std::string family_name(const Lattice& l, const std::vector<const Event*>& fam) {
  std::string out;
  for (const auto* e : fam) {
    if (!out.empty())
      out += " & ";
    out += l.event_name(*e);
  }
  return out;
}

struct Ops {
  std::function<Event(const Event&)> op;
  std::string name;
};

/// Laws shared by every normal necessity operator on events: conjunction over
/// families, truth, positive introspection, monotonicity, and S(E)-basedness.
inline void check_necessity_laws(const Lattice& l, const std::vector<Event>& basis, const BasisOptions& opts,
                                 const Ops& box, const std::function<StateSet(const Event&)>& raw_set,
                                 const std::string& who, Report& r) {
  const std::string& n = box.name;
  std::vector<StateSet> up(basis.size());
  std::vector<Event> boxed(basis.size());
  std::vector<StateSet> up_boxed(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    up[i] = up_closure(l, basis[i]);
    boxed[i] = box.op(basis[i]);
    up_boxed[i] = up_closure(l, boxed[i]);
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Event& e = basis[i];
    const std::string at = who + ", E = " + l.event_name(e);
    r.expect(boxed[i].space == e.space && up_boxed[i] == raw_set(e), n + ".S(E)-based", at);
    r.expect(up_boxed[i].is_subset_of(up[i]), n + ".truth", at);
    r.expect(up_boxed[i].is_subset_of(up_closure(l, box.op(boxed[i]))), n + ".positive-introspection", at);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (up[i].is_subset_of(up[j]))
        r.expect(up_boxed[i].is_subset_of(up_boxed[j]), n + ".monotonicity", at + ", F = " + l.event_name(basis[j]));
  }
  for (const auto& fam : families(basis, opts.family_pool)) {
    std::vector<Event> parts;
    for (const auto* e : fam)
      parts.push_back(box.op(*e));
    r.expect(box.op(conj_of(l, fam)) == event_and(l, parts), n + ".conjunction", who + ", family " + family_name(l, fam));
  }
}

/// The stabilized intersection of (not K)^n(E), n >= 1.
inline Event negated_knowledge_limit(const Lattice& l, const std::function<Event(const Event&)>& k, const Event& e) {
  std::vector<Event> seen;
  Event x = event_not(l, k(e));
  while (std::find(seen.begin(), seen.end(), x) == seen.end()) {
    seen.push_back(x);
    x = event_not(l, k(x));
  }
  return event_and(l, seen);
}

} // namespace detail

/// Necessitation, conjunction, truth, introspection and monotonicity of K_i;
/// the awareness laws relating K_i, A_i and U_i; possibility sets in
/// comparable spaces; and S(E)-basedness of K_i and A_i.
inline Report explicit_property_suite(const HMSModel& m, const BasisOptions& opts = {}) {
  require_valid(validate_hms(m), "HMS model");
  Report r;
  const Lattice& l = m.frame;
  auto basis = event_basis(l, opts, [&](const Event& e) {
    std::vector<Event> out;
    for (int i = 0; i < l.agent_count(); ++i) {
      out.push_back(k_op(m, i, e));
      out.push_back(a_op(m, i, e));
    }
    return out;
  });
  for (int i = 0; i < l.agent_count(); ++i) {
    const std::string who = "agent " + l.agents()[i];
    auto K = [&](const Event& e) { return k_op(m, i, e); };
    auto A = [&](const Event& e) { return a_op(m, i, e); };
    auto U = [&](const Event& e) { return u_op(m, i, e); };
    auto nt = [&](const Event& e) { return event_not(l, e); };
    auto raw_k = [&](const Event& e) { return k_set(m, i, e); };
    detail::check_necessity_laws(l, basis, opts, {K, "K"}, raw_k, who, r);
    r.expect(K(omega_event(l)) == omega_event(l), "K.necessitation", who);
    for (const auto& e : basis) {
      const std::string at = who + ", E = " + l.event_name(e);
      Event ke = K(e);
      Event nke = nt(ke);
      Event ae = A(e);
      Event ue = U(e);
      {
        StateSet lhs = up_closure(l, event_and(l, nke, nt(K(nke))));
        r.expect(lhs.is_subset_of(up_closure(l, nt(K(nt(K(nke)))))), "K.weak-negative-introspection-1", at);
      }
      r.expect(up_closure(l, ae) == a_set(m, i, e) && ae.space == e.space, "A.S(E)-based", at);
      r.expect(K(ue) == vacuous_event(l, e.space), "KU-introspection", at);
      r.expect(ue == U(ue), "AU-introspection", at);
      r.expect(ae == K(full_event(l, e.space)), "weak-necessitation", at);
      r.expect(ae == event_or(l, ke, K(nke)), "plausibility", at);
      r.expect(ue == detail::negated_knowledge_limit(l, K, e), "strong-plausibility", at);
      r.expect(event_and(l, nke, A(nke)) == K(nke), "weak-negative-introspection-2", at);
      r.expect(ae == A(nt(e)), "symmetry", at);
      r.expect(ae == A(ke), "AK-self-reflection", at);
      r.expect(ae == A(ae), "AA-self-reflection", at);
      r.expect(ae == K(ae), "A-introspection", at);
    }
    for (const auto& fam : detail::families(basis, opts.family_pool)) {
      std::vector<Event> parts;
      for (const auto* e : fam)
        parts.push_back(A(*e));
      r.expect(event_and(l, parts) == A(detail::conj_of(l, fam)), "A-conjunction",
               who + ", family " + detail::family_name(l, fam));
    }
    // If Pi(omega) lies in S_Upsilon with Upsilon below Psi below space(omega), then Pi(omega_Psi) = Pi(omega).
    for (int g = 0; g < l.state_count(); ++g) {
      AtomMask phi = l.space_of(g);
      AtomMask ups = possibility_space(l, m.pi[i], g);
      for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
        if (below(ups, psi))
          r.expect(m.pi[i][l.project(g, psi)] == m.pi[i][g], "possibility-in-comparable-spaces",
                   detail::agent_state(l, i, g) + ", space '" + l.space_key(psi) + "'");
        if (psi == 0)
          break;
      }
    }
  }
  return r;
}

/// Validation of Lambda, the partitional laws of L_i, and the identities
/// linking K_i, L_i, A_i and U_i.
inline Report implicit_property_suite(const ComplementedHMSModel& c, const BasisOptions& opts = {}) {
  Report pre = validate_lambda(c);
  require_valid(pre, "complemented HMS model");
  Report r;
  r.merge(pre);
  const Lattice& l = c.lattice();
  auto basis = event_basis(l, opts, [&](const Event& e) {
    std::vector<Event> out;
    for (int i = 0; i < l.agent_count(); ++i) {
      out.push_back(l_op(c, i, e));
      out.push_back(k_op(c, i, e));
      out.push_back(a_op(c, i, e));
    }
    return out;
  });
  for (int i = 0; i < l.agent_count(); ++i) {
    const std::string who = "agent " + l.agents()[i];
    auto L = [&](const Event& e) { return l_op(c, i, e); };
    auto K = [&](const Event& e) { return k_op(c, i, e); };
    auto A = [&](const Event& e) { return a_op(c, i, e); };
    auto U = [&](const Event& e) { return u_op(c, i, e); };
    auto raw_l = [&](const Event& e) { return necessity_set(l, c.lambda[i], e); };
    detail::check_necessity_laws(l, basis, opts, {L, "L"}, raw_l, who, r);
    for (AtomMask s = 0; s < l.space_count(); ++s)
      r.expect(L(full_event(l, s)) == full_event(l, s), "L.necessitation", who + ", space '" + l.space_key(s) + "'");
    for (const auto& e : basis) {
      const std::string at = who + ", E = " + l.event_name(e);
      Event nle = event_not(l, L(e));
      r.expect(up_closure(l, nle).is_subset_of(up_closure(l, L(nle))), "L.negative-introspection", at);
      Event ae = A(e);
      Event ue = U(e);
      r.expect(K(e) == event_and(l, L(e), ae), "K=L&A", at);
      r.expect(ue == L(ue), "U=LU", at);
      r.expect(ae == L(ae), "A=LA", at);
      r.expect(A(L(e)) == ae, "AL=A", at);
    }
  }
  return r;
}

/// Validation of the implicit-knowledge-based model, consistency of the
/// derived Pi*, and agreement of A* with A and of K with L* and A*.
inline Report derivation_property_suite(const ImplicitHMSModel& im, const BasisOptions& opts = {}) {
  require_valid(validate_implicit(im), "implicit-knowledge-based HMS model");
  Report r;
  const Lattice& l = im.frame;
  ComplementedHMSModel c = derive_pi_star_unchecked(im);
  r.merge(derivation_report(im, c));
  if (!r.ok())
    return r;
  auto basis = event_basis(l, opts, [&](const Event& e) {
    std::vector<Event> out;
    for (int i = 0; i < l.agent_count(); ++i) {
      out.push_back(l_op(im, i, e));
      out.push_back(a_star_op(im, i, e));
    }
    return out;
  });
  for (int i = 0; i < l.agent_count(); ++i) {
    const std::string who = "agent " + l.agents()[i];
    for (const auto& e : basis) {
      const std::string at = who + ", E = " + l.event_name(e);
      Event as = a_star_op(im, i, e);
      r.expect(as == a_op(c, i, e), "A*=A", at);
      r.expect(k_op(c, i, e) == event_and(l, l_op(im, i, e), as), "K=L*&A*", at);
    }
  }
  return r;
}

} // namespace awarekit
