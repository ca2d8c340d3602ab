#pragma once

// Single-point fault injection used by the mutation-sensitivity tests.
// Library code consults `mutation::active()` at the documented sites; the
// default is Mutation::None and nothing outside the test suites changes it.

#include <array>
#include <string_view>

namespace awarekit {

enum class Mutation {
  None,
  VacuousFallbackDropped,   // K/L/A/A* fall back to the vacuous event of S_empty instead of S(E)
  AwarenessStrictOrder,     // A_i compares spaces with a strict order
  NegationTopSpace,         // event negation complements inside the top space
  CategoryAwarenessBroken,  // build_category drops one awareness atom in one sublanguage model
  FhTransformDropsPair,     // fh_transform loses one non-reflexive accessibility pair
  KnowledgeUsesLambda,      // K_i is computed from the implicit correspondence
  PiStarIgnoresAlpha,       // derived explicit correspondence ignores the awareness function
  FhAwarenessShallow,       // FH a_i clause only looks at atoms outside modal operators
};

inline constexpr std::array<Mutation, 8> all_mutations{
    Mutation::VacuousFallbackDropped, Mutation::AwarenessStrictOrder,
    Mutation::NegationTopSpace,       Mutation::CategoryAwarenessBroken,
    Mutation::FhTransformDropsPair,   Mutation::KnowledgeUsesLambda,
    Mutation::PiStarIgnoresAlpha,     Mutation::FhAwarenessShallow,
};

inline std::string_view to_string(Mutation m) {
  switch (m) {
  case Mutation::None: return "none";
  case Mutation::VacuousFallbackDropped: return "vacuous-fallback-dropped";
  case Mutation::AwarenessStrictOrder: return "awareness-strict-order";
  case Mutation::NegationTopSpace: return "negation-top-space";
  case Mutation::CategoryAwarenessBroken: return "category-awareness-broken";
  case Mutation::FhTransformDropsPair: return "fh-transform-drops-pair";
  case Mutation::KnowledgeUsesLambda: return "knowledge-uses-lambda";
  case Mutation::PiStarIgnoresAlpha: return "pi-star-ignores-alpha";
  case Mutation::FhAwarenessShallow: return "fh-awareness-shallow";
  }
  return "unknown";
}

namespace mutation {

inline Mutation& active() {
  thread_local Mutation current = Mutation::None;
  return current;
}

inline bool is(Mutation m) { return active() == m; }

class Scoped {
public:
  explicit Scoped(Mutation m) : previous_(active()) { active() = m; }
  ~Scoped() { active() = previous_; }
  Scoped(const Scoped&) = delete;
  Scoped& operator=(const Scoped&) = delete;

private:
  Mutation previous_;
};

} // namespace mutation
} // namespace awarekit
