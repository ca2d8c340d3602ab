#include "awarekit/formula.hpp"
#include "awarekit/genmodels.hpp"

#include <gtest/gtest.h>

using namespace awarekit;
using F = Formula;

TEST(Parse, KnowledgeOfAtom) {
  EXPECT_EQ(parse("k_1 p", {"1"}), F::knows("1", F::atom("p")));
}

TEST(Parse, PrefixOperatorsBindTighterThanConjunction) {
  F expected = F::conj(F::aware("1", F::negation(F::atom("q"))), F::implicit("1", F::atom("p")));
  EXPECT_EQ(parse("a_1 ~q & l_1 p", {"1"}), expected);
}

TEST(Parse, UnknownAgentIsASyntaxError) {
  try {
    parse("k_2 p", {"1"});
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
}

TEST(Parse, MalformedInput) {
  EXPECT_THROW(parse("(p & q"), SyntaxError);
  EXPECT_THROW(parse("p q"), SyntaxError);
  EXPECT_THROW(parse(""), SyntaxError);
  EXPECT_THROW(parse("p &"), SyntaxError);
  EXPECT_THROW(parse("k_ p"), SyntaxError);
}

TEST(Parse, DerivedConnectives) {
  F p = F::atom("p"), q = F::atom("q"), r = F::atom("r");
  EXPECT_EQ(parse("p | q"), F::disj(p, q));
  EXPECT_EQ(parse("p -> q"), F::implies(p, q));
  EXPECT_EQ(parse("p <-> q"), F::iff(p, q));
  EXPECT_EQ(parse("p -> q -> r"), F::implies(p, F::implies(q, r)));
  EXPECT_EQ(parse("p & q | r"), F::disj(F::conj(p, q), r));
  EXPECT_EQ(parse("p & q & r"), F::conj(F::conj(p, q), r));
}

TEST(Parse, AgentIdsAreTokens) {
  EXPECT_EQ(parse("l_alice T", {"alice"}), F::implicit("alice", F::top()));
}

TEST(Atoms, Examples) {
  EXPECT_EQ(atoms(F::knows("1", F::atom("p"))), (std::set<std::string>{"p"}));
  EXPECT_TRUE(atoms(F::top()).empty());
  F f = F::conj(F::aware("1", F::atom("p")), F::implicit("1", F::negation(F::atom("q"))));
  EXPECT_EQ(atoms(f), (std::set<std::string>{"p", "q"}));
}

TEST(Render, Examples) {
  EXPECT_EQ(render(F::knows("1", F::atom("p"))), "(k_1 p)");
  EXPECT_EQ(render(F::negation(F::top())), "(~ T)");
  EXPECT_EQ(render(F::conj(F::atom("p"), F::atom("q"))), "(p & q)");
}

TEST(Render, RoundTripOnRandomFormulas) {
  Rng rng(42);
  const std::vector<std::string> at{"p", "q", "r"}, ag{"1", "2"};
  for (int n = 0; n < 500; ++n) {
    F f = random_formula(rng, at, ag, 3, 8);
    F back = parse(render(f), {"1", "2"});
    ASSERT_EQ(back, f) << render(f);
    ASSERT_EQ(render(back), render(f));
  }
}

TEST(Atoms, MonotoneUnderSubformulas) {
  Rng rng(7);
  const std::vector<std::string> at{"p", "q", "r"}, ag{"1"};
  for (int n = 0; n < 200; ++n) {
    F f = random_formula(rng, at, ag, 2, 6);
    auto all = atoms(f);
    std::vector<F> subs;
    subformulas(f, subs);
    for (const auto& s : subs)
      for (const auto& a : atoms(s))
        ASSERT_TRUE(all.count(a)) << render(s) << " in " << render(f);
  }
}

TEST(Formula, EqualityIsStructural) {
  EXPECT_EQ(parse("a_1 (p & q)"), parse("a_1(p&q)"));
  EXPECT_NE(parse("a_1 p"), parse("l_1 p"));
  EXPECT_NE(parse("a_1 p"), parse("a_2 p"));
  EXPECT_EQ(parse("k_1 l_2 p").modal_depth(), 2);
}
