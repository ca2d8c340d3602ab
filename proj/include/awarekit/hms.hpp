#pragma once

// Unawareness structures: a lattice of spaces with one explicit possibility
// correspondence per agent, plus the explicit knowledge, awareness and
// unawareness operators on events.

#include "awarekit/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace awarekit {

struct HMSModel {
  Lattice frame;
  std::vector<Correspondence> pi; // indexed by agent, then by global state

  const Lattice& lattice() const noexcept { return frame; }
};

struct ValidationOptions {
  bool relax_valuation = false;
};

/// S_{Pi(omega)}: the single space holding the possibility set. Throws
/// ConfinementError when the set is empty or straddles spaces.
inline AtomMask possibility_space(const Lattice& l, const Correspondence& corr, int g) {
  auto m = space_of_set(l, corr[g]);
  if (!m)
    throw ModelError(ErrorCode::ConfinementError,
                     "possibility set at " + l.state_name(g) + " does not lie in exactly one space");
  return *m;
}

/// {omega : Pi_i(omega) subset-of E}.
inline StateSet k_set(const HMSModel& m, int agent, const Event& e) {
  return necessity_set(m.frame, m.pi[agent], e);
}

/// K_i(E), the S(E)-based event of states where i explicitly knows E.
inline Event k_op(const HMSModel& m, int agent, const Event& e) {
  return operator_event(m.frame, e.space, k_set(m, agent, e));
}

/// States whose awareness level `level(omega)` is at or above S(E).
template <typename Level>
StateSet awareness_set(const Lattice& l, const Event& e, Level&& level) {
  StateSet out = l.empty_set();
  for (int g = 0; g < l.state_count(); ++g) {
    AtomMask lv = level(g);
    bool aware = below(e.space, lv);
    if (mutation::is(Mutation::AwarenessStrictOrder))
      aware = aware && lv != e.space;
    if (aware)
      out.set(g);
  }
  return out;
}

/// {omega : S_{Pi_i(omega)} at or above S(E)}.
inline StateSet a_set(const HMSModel& m, int agent, const Event& e) {
  return awareness_set(m.frame, e, [&](int g) { return possibility_space(m.frame, m.pi[agent], g); });
}

/// A_i(E).
inline Event a_op(const HMSModel& m, int agent, const Event& e) {
  return operator_event(m.frame, e.space, a_set(m, agent, e));
}

/// U_i(E) = not A_i(E).
inline Event u_op(const HMSModel& m, int agent, const Event& e) { return event_not(m.frame, a_op(m, agent, e)); }

// ---------------------------------------------------------------------------

namespace detail {

inline std::string agent_state(const Lattice& l, int agent, int g) {
  return "agent " + l.agents()[agent] + ", state " + l.state_name(g);
}

} // namespace detail

/// Checks the possibility-correspondence laws for one agent: Confinement,
/// Generalized Reflexivity, Stationarity, Projections Preserve Ignorance and
/// Projections Preserve Knowledge.
inline void check_possibility(const Lattice& l, const Correspondence& pi, int agent, Report& r,
                              const std::string& prefix = "pi.") {
  const int n = l.state_count();
  std::vector<std::optional<AtomMask>> space(n);
  std::vector<StateSet> up(n);
  for (int g = 0; g < n; ++g) {
    const auto where = detail::agent_state(l, agent, g);
    if (!r.expect(pi[g].any(), prefix + "nonempty", where))
      continue;
    space[g] = space_of_set(l, pi[g]);
    r.expect(space[g] && below(*space[g], l.space_of(g)), prefix + "confinement", where + ", set " + l.set_name(pi[g]));
    up[g] = up_closure_of_set(l, pi[g]);
    r.expect(up[g].test(g), prefix + "generalized-reflexivity", where);
  }
  for (int g = 0; g < n; ++g) {
    for (auto t = pi[g].find_first(); t != StateSet::npos; t = pi[g].find_next(t))
      r.expect(pi[t] == pi[g], prefix + "stationarity",
               detail::agent_state(l, agent, g) + ", member " + l.state_name(static_cast<int>(t)));
  }
  for (int g = 0; g < n; ++g) {
    AtomMask phi = l.space_of(g);
    if (!pi[g].any())
      continue;
    for (AtomMask psi = phi;; psi = (psi - 1) & phi) {
      int gp = l.project(g, psi);
      if (gp >= 0 && pi[gp].any()) {
        r.expect(up[g].is_subset_of(up[gp]), prefix + "projections-preserve-ignorance",
                 detail::agent_state(l, agent, g) + ", space '" + l.space_key(psi) + "'");
        // Knowledge: if Pi(omega) lies in S_Psi' with Psi below Psi' below Phi, then Pi(omega)_Psi = Pi(omega_Psi).
        if (space[g] && below(psi, *space[g])) {
          auto projected = project_set(l, pi[g], psi);
          r.expect(projected && *projected == pi[gp], prefix + "projections-preserve-knowledge",
                   detail::agent_state(l, agent, g) + ", space '" + l.space_key(psi) + "'");
        }
      }
      if (psi == 0)
        break;
    }
  }
}

/// Lattice laws, Assumption-1 properties of every Pi_i, and valuation shape.
inline Report validate_hms(const HMSModel& m, const ValidationOptions& opts = {}) {
  Report r;
  const Lattice& l = m.frame;
  check_lattice(l, r, opts.relax_valuation);
  if (!r.expect(static_cast<int>(m.pi.size()) == l.agent_count(), "pi.agents", "one correspondence per agent"))
    return r;
  for (int i = 0; i < l.agent_count(); ++i) {
    if (!r.expect(static_cast<int>(m.pi[i].size()) == l.state_count(), "pi.total", "agent " + l.agents()[i]))
      continue;
    check_possibility(l, m.pi[i], i, r);
  }
  return r;
}

inline void require_valid(const Report& r, const std::string& what) {
  if (!r.ok())
    throw ModelError(ErrorCode::PreconditionFailed,
                     what + " failed validation: " + r.violations.front().law + " [" + r.violations.front().witness + "]");
}

} // namespace awarekit
