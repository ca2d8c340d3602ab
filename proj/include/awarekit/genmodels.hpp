#pragma once

// Seeded random models and formulas. Every generator is a pure function of
// its seed and caps.

#include "awarekit/transforms.hpp"

#include <random>
#include <string>
#include <vector>

namespace awarekit {

struct GenCaps {
  int atoms = 2;  // at most this many atoms
  int worlds = 4; // at most this many worlds
  int agents = 1; // at most this many agents
};

using Rng = std::mt19937_64;

inline void check_caps(const GenCaps& caps) {
  if (caps.atoms < 1 || caps.worlds < 1 || caps.agents < 1)
    throw ModelError(ErrorCode::InvalidCaps, "caps must be at least 1 (atoms " + std::to_string(caps.atoms) +
                                                 ", worlds " + std::to_string(caps.worlds) + ", agents " +
                                                 std::to_string(caps.agents) + ")");
  if (caps.atoms > max_atoms())
    throw ModelError(ErrorCode::InvalidCaps, "atom cap " + std::to_string(caps.atoms) + " exceeds the |At| limit " +
                                                 std::to_string(max_atoms()));
}

inline std::string atom_name(int i) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z", "b"};
  return names[i];
}

namespace detail {

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

} // namespace detail

/// Random partitional FH model: one random partition per agent, awareness
/// constant on cells, random valuation.
inline FHModel gen_fh(std::uint64_t seed, const GenCaps& caps) {
  check_caps(caps);
  Rng rng(seed);
  const int na = detail::uniform(rng, 1, caps.atoms);
  const int nw = detail::uniform(rng, 1, caps.worlds);
  const int ng = detail::uniform(rng, 1, caps.agents);
  FHModel k;
  for (int a = 0; a < na; ++a)
    k.atoms.push_back(atom_name(a));
  for (int i = 0; i < ng; ++i)
    k.agents.push_back(std::to_string(i + 1));
  for (int w = 0; w < nw; ++w)
    k.worlds.push_back("w" + std::to_string(w));
  const AtomMask full = (AtomMask{1} << na) - 1;
  k.relation.assign(ng, std::vector<WorldSet>(nw, WorldSet(nw)));
  k.awareness.assign(ng, std::vector<AtomMask>(nw, 0));
  for (int i = 0; i < ng; ++i) {
    std::vector<int> cell(nw);
    for (int w = 0; w < nw; ++w)
      cell[w] = detail::uniform(rng, 0, nw - 1);
    std::vector<AtomMask> aware(nw);
    for (auto& m : aware)
      m = static_cast<AtomMask>(detail::uniform(rng, 0, static_cast<int>(full)));
    for (int w = 0; w < nw; ++w) {
      k.awareness[i][w] = aware[cell[w]];
      for (int t = 0; t < nw; ++t)
        if (cell[t] == cell[w])
          k.relation[i][w].set(t);
    }
  }
  k.valuation.assign(na, WorldSet(nw));
  for (int a = 0; a < na; ++a)
    for (int w = 0; w < nw; ++w)
      k.valuation[a][w] = detail::uniform(rng, 0, 1) == 1;
  return k;
}

/// Whether generated HMS models come from the minimized category (decided by the seed by default).
enum class Minimize { BySeed, Never, Always };

namespace detail {

inline bool pick_minimize(std::uint64_t seed, Minimize mode) {
  if (mode == Minimize::BySeed)
    return Rng(seed ^ 0x5bd1e995ULL)() & 1;
  return mode == Minimize::Always;
}

} // namespace detail

/// gen_fh followed by the HMS transform.
inline ComplementedHMSModel gen_hms(std::uint64_t seed, const GenCaps& caps, Minimize mode = Minimize::BySeed) {
  return hms_transform(gen_fh(seed, caps), {detail::pick_minimize(seed, mode)});
}

/// gen_fh followed by the truncated HMS transform.
inline ImplicitHMSModel gen_implicit(std::uint64_t seed, const GenCaps& caps, Minimize mode = Minimize::BySeed) {
  return truncated_hms_transform(gen_fh(seed, caps), {detail::pick_minimize(seed, mode)});
}

/// Random formula of modal depth at most `depth` over the given atoms and agents.
inline Formula random_formula(Rng& rng, const std::vector<std::string>& atoms, const std::vector<std::string>& agents,
                              int depth, int size = 4) {
  int roll = detail::uniform(rng, 0, size <= 0 ? 3 : (depth > 0 ? 11 : 7));
  auto leaf = [&] {
    if (atoms.empty() || detail::uniform(rng, 0, 5) == 0)
      return Formula::top();
    return Formula::atom(atoms[detail::uniform(rng, 0, static_cast<int>(atoms.size()) - 1)]);
  };
  if (roll <= 3)
    return leaf();
  if (roll <= 5)
    return Formula::negation(random_formula(rng, atoms, agents, depth, size - 1));
  if (roll <= 7)
    return Formula::conj(random_formula(rng, atoms, agents, depth, size - 2),
                         random_formula(rng, atoms, agents, depth, size - 2));
  static constexpr Op mods[] = {Op::Implicit, Op::Aware, Op::Know};
  const auto& ag = agents[detail::uniform(rng, 0, static_cast<int>(agents.size()) - 1)];
  return Formula::modal(mods[detail::uniform(rng, 0, 2)], ag, random_formula(rng, atoms, agents, depth - 1, size - 1));
}

} // namespace awarekit
