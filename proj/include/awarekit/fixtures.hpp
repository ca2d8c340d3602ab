#pragma once

// The two single-agent example models over At = {p, q}. In both, the agent
// is aware of p only: Pi_1 sends every state of S_{p,q} and S_{p} to the
// p-cell of S_{p}, and every other state to S_empty. They differ in Lambda_1
// on S_{p,q}: the left model groups states by p (no implicit knowledge beyond
// the explicit), the right one is fully discerning (implicit knowledge of q).

#include "awarekit/implicit.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace awarekit {

namespace detail {

inline Lattice fig1_lattice() {
  LatticeBuilder b({"p", "q"}, {"1"});
  const AtomMask p = 1, q = 2, pq = 3;
  b.add_space(pq, {"pq", "p~q", "~pq", "~p~q"});
  b.add_space(p, {"p", "~p"});
  b.add_space(q, {"q", "~q"});
  b.add_space(0, {"*"});
  b.add_projection(pq, p, {{"pq", "p"}, {"p~q", "p"}, {"~pq", "~p"}, {"~p~q", "~p"}});
  b.add_projection(pq, q, {{"pq", "q"}, {"p~q", "~q"}, {"~pq", "q"}, {"~p~q", "~q"}});
  b.add_projection(p, 0, {{"p", "*"}, {"~p", "*"}});
  b.add_projection(q, 0, {{"q", "*"}, {"~q", "*"}});
  b.set_valuation(0, p, {"p"});
  b.set_valuation(1, q, {"q"});
  return b.build();
}

/// Correspondence from (state, cell) pairs written as "space:id" references.
inline Correspondence correspondence(const Lattice& l,
                                     std::initializer_list<std::pair<std::vector<std::string>, std::vector<std::string>>> cells) {
  Correspondence c(l.state_count(), l.empty_set());
  for (const auto& [states, cell] : cells) {
    StateSet s = l.empty_set();
    for (const auto& ref : cell)
      s.set(l.state_ref(ref));
    for (const auto& ref : states)
      c[l.state_ref(ref)] = s;
  }
  return c;
}

inline HMSModel fig1_base() {
  HMSModel m{fig1_lattice(), {}};
  m.pi.push_back(correspondence(m.frame, {
                                             {{"p,q:pq", "p,q:p~q", "p:p"}, {"p:p"}},
                                             {{"p,q:~pq", "p,q:~p~q", "p:~p"}, {"p:~p"}},
                                             {{"q:q", "q:~q", ":*"}, {":*"}},
                                         }));
  return m;
}

} // namespace detail

/// Left example: Lambda_1 cells {pq, p~q}, {~pq, ~p~q}; {q, ~q} on S_{q}.
inline ComplementedHMSModel fig1L() {
  ComplementedHMSModel c{detail::fig1_base(), {}};
  c.lambda.push_back(detail::correspondence(c.lattice(), {
                                                             {{"p,q:pq", "p,q:p~q"}, {"p,q:pq", "p,q:p~q"}},
                                                             {{"p,q:~pq", "p,q:~p~q"}, {"p,q:~pq", "p,q:~p~q"}},
                                                             {{"p:p"}, {"p:p"}},
                                                             {{"p:~p"}, {"p:~p"}},
                                                             {{"q:q", "q:~q"}, {"q:q", "q:~q"}},
                                                             {{":*"}, {":*"}},
                                                         }));
  return c;
}

/// Right example: Lambda_1 is the identity partition on every space.
inline ComplementedHMSModel fig1R() {
  ComplementedHMSModel c{detail::fig1_base(), {}};
  const Lattice& l = c.lattice();
  Correspondence lam(l.state_count(), l.empty_set());
  for (int g = 0; g < l.state_count(); ++g)
    lam[g].set(g);
  c.lambda.push_back(std::move(lam));
  return c;
}

} // namespace awarekit
