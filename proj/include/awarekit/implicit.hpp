#pragma once

// Implicit knowledge on top of unawareness structures.
//
// A complemented model adds an implicit possibility correspondence Lambda_i
// to each agent of an HMS model. An implicit-knowledge-based model instead
// takes Lambda*_i and an awareness function alpha_i as primitives, from which
// the explicit correspondence Pi*_i is derived.

#include "awarekit/hms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace awarekit {

struct ComplementedHMSModel {
  HMSModel base;
  std::vector<Correspondence> lambda;

  const Lattice& lattice() const noexcept { return base.frame; }
};

struct ImplicitHMSModel {
  Lattice frame;
  std::vector<Correspondence> lambda_star;
  std::vector<std::vector<AtomMask>> alpha; // agent -> state -> awareness level

  const Lattice& lattice() const noexcept { return frame; }
};

// ---------------------------------------------------------------------------
// Operators.

/// L_i(E) from an implicit correspondence.
inline Event l_op(const Lattice& l, const Correspondence& lambda, const Event& e) {
  return operator_event(l, e.space, necessity_set(l, lambda, e));
}

inline Event l_op(const ComplementedHMSModel& c, int agent, const Event& e) {
  return l_op(c.lattice(), c.lambda[agent], e);
}

inline Event l_op(const ImplicitHMSModel& im, int agent, const Event& e) {
  return l_op(im.frame, im.lambda_star[agent], e);
}

/// K_i(E) over the explicit correspondence of a complemented model.
inline Event k_op(const ComplementedHMSModel& c, int agent, const Event& e) {
  if (mutation::is(Mutation::KnowledgeUsesLambda))
    return l_op(c, agent, e);
  return k_op(c.base, agent, e);
}

inline Event a_op(const ComplementedHMSModel& c, int agent, const Event& e) { return a_op(c.base, agent, e); }
inline Event u_op(const ComplementedHMSModel& c, int agent, const Event& e) {
  return event_not(c.lattice(), a_op(c, agent, e));
}

inline StateSet a_star_set(const ImplicitHMSModel& im, int agent, const Event& e) {
  return awareness_set(im.frame, e, [&](int g) { return im.alpha[agent][g]; });
}

/// A*_i(E) = {omega : alpha_i(omega) at or above S(E)}, vacuous fallback at S(E).
inline Event a_star_op(const ImplicitHMSModel& im, int agent, const Event& e) {
  return operator_event(im.frame, e.space, a_star_set(im, agent, e));
}

// ---------------------------------------------------------------------------
// Implicit correspondences.

/// Reflexivity, Stationarity and Projections Preserve Implicit Knowledge, plus
/// the consequences Strong Confinement, the partition property and Projections
/// Preserve Implicit Ignorance.
inline void check_implicit_correspondence(const Lattice& l, const Correspondence& lam, int agent, Report& r,
                                          const std::string& prefix) {
  const int n = l.state_count();
  for (int g = 0; g < n; ++g) {
    const auto where = detail::agent_state(l, agent, g);
    r.expect(lam[g].test(g), prefix + "reflexivity", where);
    for (auto t = lam[g].find_first(); t != StateSet::npos; t = lam[g].find_next(t))
      r.expect(lam[t] == lam[g], prefix + "stationarity", where + ", member " + l.state_name(static_cast<int>(t)));
    AtomMask phi = l.space_of(g);
    for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
      int gp = l.project(g, psi);
      if (gp >= 0) {
        auto projected = project_set(l, lam[g], psi);
        r.expect(projected && *projected == lam[gp], prefix + "projections-preserve-implicit-knowledge",
                 where + ", space '" + l.space_key(psi) + "'");
      }
      if (psi == 0)
        break;
    }
  }
  // Consequences.
  for (int g = 0; g < n; ++g) {
    const auto where = detail::agent_state(l, agent, g);
    r.expect(lam[g].is_subset_of(l.space_set(l.space_of(g))), prefix + "strong-confinement", where);
    StateSet up = up_closure_of_set(l, lam[g]);
    AtomMask phi = l.space_of(g);
    for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
      int gp = l.project(g, psi);
      if (gp >= 0)
        r.expect(up.is_subset_of(up_closure_of_set(l, lam[gp])), prefix + "projections-preserve-implicit-ignorance",
                 where + ", space '" + l.space_key(psi) + "'");
      if (psi == 0)
        break;
    }
  }
  for (AtomMask m = 0; m < l.space_count(); ++m) {
    StateSet covered = l.empty_set();
    bool disjoint = true;
    for (int g = l.begin_of(m); g < l.end_of(m); ++g)
      covered |= lam[g];
    for (int g = l.begin_of(m); g < l.end_of(m); ++g)
      for (int h = g + 1; h < l.end_of(m); ++h)
        if (lam[g] != lam[h] && (lam[g] & lam[h]).any())
          disjoint = false;
    r.expect(disjoint && covered == l.space_set(m), prefix + "partition",
             "agent " + l.agents()[agent] + ", space '" + l.space_key(m) + "'");
  }
}

/// Explicit and Implicit Measurability of (Lambda, Pi) for one agent.
inline void check_joint_measurability(const Lattice& l, const Correspondence& lam, const Correspondence& pi, int agent,
                                      Report& r, const std::string& prefix) {
  for (int g = 0; g < l.state_count(); ++g) {
    const auto where = detail::agent_state(l, agent, g);
    for (auto t = lam[g].find_first(); t != StateSet::npos; t = lam[g].find_next(t))
      r.expect(pi[t] == pi[g], prefix + "explicit-measurability",
               where + ", member " + l.state_name(static_cast<int>(t)));
    auto space = space_of_set(l, pi[g]);
    for (auto t = pi[g].find_first(); t != StateSet::npos; t = pi[g].find_next(t)) {
      std::optional<StateSet> projected;
      if (space)
        projected = project_set(l, lam[g], *space);
      r.expect(projected && lam[t] == *projected, prefix + "implicit-measurability",
               where + ", member " + l.state_name(static_cast<int>(t)));
    }
  }
}

/// Laws of each Lambda_i in a complemented model, and the lemmas relating it to Pi_i.
inline Report validate_lambda(const ComplementedHMSModel& c, const ValidationOptions& opts = {}) {
  Report r;
  const Lattice& l = c.lattice();
  Report base = validate_hms(c.base, opts);
  if (!base.ok()) {
    r.add("lambda.precondition", "base model fails validate_hms: " + base.violations.front().law);
    return r;
  }
  if (!r.expect(static_cast<int>(c.lambda.size()) == l.agent_count(), "lambda.agents", "one correspondence per agent"))
    return r;
  for (int i = 0; i < l.agent_count(); ++i) {
    const auto& lam = c.lambda[i];
    const auto& pi = c.base.pi[i];
    if (!r.expect(static_cast<int>(lam.size()) == l.state_count(), "lambda.total", "agent " + l.agents()[i]))
      continue;
    check_implicit_correspondence(l, lam, i, r, "lambda.");
    check_joint_measurability(l, lam, pi, i, r, "lambda.");
    for (int g = 0; g < l.state_count(); ++g) {
      const auto where = detail::agent_state(l, i, g);
      // omega' in Pi(omega) implies Lambda(omega') = Pi(omega').
      for (auto t = pi[g].find_first(); t != StateSet::npos; t = pi[g].find_next(t))
        r.expect(lam[t] == pi[t], "lambda.coincides-on-possibility-set",
                 where + ", member " + l.state_name(static_cast<int>(t)));
      auto space = space_of_set(l, pi[g]);
      std::optional<StateSet> projected;
      if (space)
        projected = project_set(l, lam[g], *space);
      r.expect(projected && *projected == pi[g], "lambda.coherence", where);
    }
  }
  return r;
}

/// Outcome of candidate_lambda_from_pi: the model when the candidate validates.
struct CandidateResult {
  std::optional<ComplementedHMSModel> model;
  Report report;
};

/// Candidate Lambda_i(omega) := {omega' in S_omega : Pi_i(omega') = Pi_i(omega)}, kept only if it validates.
inline CandidateResult candidate_lambda_from_pi(const HMSModel& m, const ValidationOptions& opts = {}) {
  require_valid(validate_hms(m, opts), "HMS model");
  const Lattice& l = m.frame;
  ComplementedHMSModel c{m, {}};
  c.lambda.assign(l.agent_count(), Correspondence(l.state_count(), l.empty_set()));
  for (int i = 0; i < l.agent_count(); ++i)
    for (int g = 0; g < l.state_count(); ++g) {
      AtomMask s = l.space_of(g);
      for (int t = l.begin_of(s); t < l.end_of(s); ++t)
        if (m.pi[i][t] == m.pi[i][g])
          c.lambda[i][g].set(t);
    }
  CandidateResult out;
  out.report = validate_lambda(c, opts);
  if (out.report.ok())
    out.model = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------
// Implicit-knowledge-based models.

/// Properties O (Lack of Conception), I (Awareness Measurability), II, III and IV.
inline Report validate_alpha(const ImplicitHMSModel& im) {
  Report r;
  const Lattice& l = im.frame;
  if (!r.expect(static_cast<int>(im.alpha.size()) == l.agent_count(), "alpha.agents", "one function per agent"))
    return r;
  for (int i = 0; i < l.agent_count(); ++i) {
    const auto& alpha = im.alpha[i];
    if (!r.expect(static_cast<int>(alpha.size()) == l.state_count(), "alpha.total", "agent " + l.agents()[i]))
      continue;
    for (int g = 0; g < l.state_count(); ++g) {
      const auto where = detail::agent_state(l, i, g);
      AtomMask phi = l.space_of(g);
      AtomMask level = alpha[g];
      r.expect(below(level, phi), "alpha.O-lack-of-conception", where + ", level '" + l.space_key(level) + "'");
      if (i < static_cast<int>(im.lambda_star.size()) && static_cast<int>(im.lambda_star[i].size()) == l.state_count())
        for (auto t = im.lambda_star[i][g].find_first(); t != StateSet::npos; t = im.lambda_star[i][g].find_next(t))
          r.expect(alpha[t] == level, "alpha.I-awareness-measurability",
                   where + ", member " + l.state_name(static_cast<int>(t)));
      for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
        int gp = l.project(g, psi);
        if (gp >= 0) {
          const auto at = where + ", space '" + l.space_key(psi) + "'";
          if (below(psi, level))
            r.expect(alpha[gp] == psi, "alpha.II", at);
          if (below(level, psi))
            r.expect(alpha[gp] == level, "alpha.III", at);
          r.expect(below(alpha[gp], level), "alpha.IV", at);
        }
        if (psi == 0)
          break;
      }
    }
  }
  return r;
}

/// Lattice laws, Assumption 2 for every Lambda*_i, and Assumption 3 for every alpha_i.
inline Report validate_implicit(const ImplicitHMSModel& im, const ValidationOptions& opts = {}) {
  Report r;
  const Lattice& l = im.frame;
  check_lattice(l, r, opts.relax_valuation);
  if (!r.expect(static_cast<int>(im.lambda_star.size()) == l.agent_count(), "lambda-star.agents",
                "one correspondence per agent"))
    return r;
  for (int i = 0; i < l.agent_count(); ++i) {
    if (!r.expect(static_cast<int>(im.lambda_star[i].size()) == l.state_count(), "lambda-star.total",
                  "agent " + l.agents()[i]))
      return r;
    check_implicit_correspondence(l, im.lambda_star[i], i, r, "lambda-star.");
  }
  r.merge(validate_alpha(im));
  return r;
}

/// Pi*_i(omega) = Lambda*_i(omega) projected to alpha_i(omega), without cross-checks.
inline ComplementedHMSModel derive_pi_star_unchecked(const ImplicitHMSModel& im) {
  const Lattice& l = im.frame;
  ComplementedHMSModel c{HMSModel{l, {}}, im.lambda_star};
  c.base.pi.assign(l.agent_count(), Correspondence(l.state_count(), l.empty_set()));
  for (int i = 0; i < l.agent_count(); ++i)
    for (int g = 0; g < l.state_count(); ++g) {
      AtomMask level = mutation::is(Mutation::PiStarIgnoresAlpha) ? l.space_of(g) : im.alpha[i][g];
      auto projected = project_set(l, im.lambda_star[i][g], level);
      if (projected)
        c.base.pi[i][g] = *projected;
    }
  return c;
}

/// Re-checks the defining clause on every projection, the three clauses
/// relating Pi* to Lambda*, Assumption 1 for Pi*, and joint measurability.
inline Report derivation_report(const ImplicitHMSModel& im, const ComplementedHMSModel& c) {
  Report r;
  const Lattice& l = im.frame;
  for (int i = 0; i < l.agent_count(); ++i) {
    const auto& lam = im.lambda_star[i];
    const auto& alpha = im.alpha[i];
    const auto& pis = c.base.pi[i];
    for (int g = 0; g < l.state_count(); ++g) {
      AtomMask own = l.space_of(g);
      auto want_a = project_set(l, lam[g], alpha[g]);
      r.expect(want_a && *want_a == pis[g], "pi-star.clause-A", detail::agent_state(l, i, g));
      for (AtomMask phi = own;; phi = (phi - 1) & own) {
        int gp = l.project(g, phi);
        if (gp >= 0) {
          const auto at = detail::agent_state(l, i, g) + ", space '" + l.space_key(phi) + "'";
          auto by_def = below(alpha[gp], own) ? project_set(l, lam[g], alpha[gp]) : std::nullopt;
          r.expect(by_def && *by_def == pis[gp], "pi-star.definition", at);
          if (below(phi, alpha[g])) {
            auto b = project_set(l, lam[g], phi);
            r.expect(b && *b == pis[gp], "pi-star.clause-B", at);
          }
          if (below(alpha[g], phi))
            r.expect(want_a && *want_a == pis[gp], "pi-star.clause-C", at);
        }
        if (phi == 0)
          break;
      }
    }
  }
  r.merge(validate_hms(c.base));
  for (int i = 0; i < l.agent_count(); ++i)
    check_joint_measurability(l, c.lambda[i], c.base.pi[i], i, r, "pi-star.");
  return r;
}

/// The complemented model (Lambda*, Pi*) of an implicit-knowledge-based model.
/// Throws DerivationInconsistent if any of the re-checked lemmas fails.
inline ComplementedHMSModel derive_pi_star(const ImplicitHMSModel& im) {
  require_valid(validate_alpha(im), "awareness function");
  ComplementedHMSModel c = derive_pi_star_unchecked(im);
  Report r = derivation_report(im, c);
  if (!r.ok())
    throw ModelError(ErrorCode::DerivationInconsistent,
                     r.violations.front().law + " [" + r.violations.front().witness + "]");
  return c;
}

} // namespace awarekit
