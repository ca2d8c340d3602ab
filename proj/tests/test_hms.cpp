#include "support.hpp"

using namespace awarekit;
using namespace awarekit::test;

namespace {

struct Fig1 : ::testing::Test {
  ComplementedHMSModel left = fig1L();
  const Lattice& l = left.lattice();
  const HMSModel& m = left.base;
};

HMSModel single_space() {
  LatticeBuilder b({}, {"1"});
  b.add_space(0, {"*"});
  HMSModel m{b.build(), {}};
  m.pi.push_back(detail::correspondence(m.frame, {{{":*"}, {":*"}}}));
  return m;
}

} // namespace

TEST_F(Fig1, LatticeShape) {
  EXPECT_EQ(l.space_count(), 4u);
  EXPECT_EQ(l.state_count(), 9);
  EXPECT_EQ(l.size_of(l.top()), 4);
  EXPECT_EQ(l.space_key(l.top()), "p,q");
  EXPECT_EQ(l.parse_space_key("pq"), l.top());
  EXPECT_EQ(l.parse_space_key(""), 0u);
}

TEST_F(Fig1, UpClosure) {
  EXPECT_EQ(up_closure(l, event(l, "p", {"p"})), states(l, {"p:p", "pq:pq", "pq:p~q"}));
  EXPECT_EQ(up_closure(l, full_event(l, 0)), ~l.empty_set());
  EXPECT_TRUE(up_closure(l, vacuous_event(l, l.top())).none());
}

TEST_F(Fig1, ProjectState) {
  const int pq = l.state_ref("pq:pq");
  EXPECT_EQ(l.state_name(project_state(l, pq, l.parse_space_key("q"))), "q:q");
  EXPECT_EQ(project_state(l, pq, l.top()), pq);
  EXPECT_EQ(l.state_name(project_state(l, l.state_ref("pq:~p~q"), 0)), ":*");
  try {
    project_state(l, l.state_ref("q:q"), l.parse_space_key("p"));
    FAIL() << "expected NotComparable";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotComparable);
  }
}

TEST_F(Fig1, UnknownReferences) {
  try {
    l.state_ref("pq:nowhere");
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownState);
  }
  try {
    l.state_ref("pr:pq");
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownSpace);
  }
}

TEST_F(Fig1, EventAlgebra) {
  Event p = event(l, "p", {"p"});
  Event q = event(l, "q", {"q"});
  EXPECT_EQ(event_not(l, p), event(l, "p", {"~p"}));
  Event pq = event_and(l, p, q);
  EXPECT_EQ(pq, event(l, "pq", {"pq"}));
  EXPECT_EQ(up_closure(l, pq), up_closure(l, p) & up_closure(l, q));
  Event both = event_or(l, p, event_not(l, p));
  EXPECT_EQ(both, event(l, "p", {"p", "~p"}));
  StateSet u = up_closure(l, both);
  EXPECT_TRUE(u.is_proper_subset_of(~l.empty_set()));
}

TEST_F(Fig1, EventAlgebraBruteForce) {
  std::vector<Event> all;
  for (AtomMask s = 0; s < l.space_count(); ++s)
    for (unsigned bits = 0; bits < (1u << l.size_of(s)); ++bits) {
      StateSet d = l.empty_set();
      for (int i = 0; i < l.size_of(s); ++i)
        if (bits & (1u << i))
          d.set(l.begin_of(s) + i);
      all.push_back(make_event(l, s, d));
    }
  for (const auto& e : all) {
    EXPECT_TRUE((up_closure(l, e) & up_closure(l, event_not(l, e))).none());
    EXPECT_EQ(event_not(l, event_not(l, e)), e);
    for (const auto& f : all) {
      Event c = event_and(l, e, f);
      ASSERT_EQ(up_closure(l, c), up_closure(l, e) & up_closure(l, f));
      ASSERT_EQ(c.space, e.space | f.space);
    }
  }
}

TEST_F(Fig1, VacuousEventsAreDistinctPerSpace) {
  EXPECT_NE(vacuous_event(l, 1), vacuous_event(l, 2));
  EXPECT_EQ(up_closure(l, vacuous_event(l, 1)), up_closure(l, vacuous_event(l, 2)));
}

TEST_F(Fig1, ValidatesCleanly) {
  EXPECT_TRUE(passes(validate_hms(m)));
  EXPECT_TRUE(passes(validate_hms(fig1R().base)));
}

TEST_F(Fig1, BrokenIgnoranceIsReported) {
  HMSModel broken = m;
  broken.pi[0][l.state_ref("q:q")] = states(l, {"q:q"});
  Report r = validate_hms(broken);
  ASSERT_TRUE(mentions(r, "projections-preserve-ignorance")) << r;
  std::string w = witness_of(r, "projections-preserve-ignorance");
  EXPECT_NE(w.find("p,q:pq"), std::string::npos) << w;
  EXPECT_NE(w.find("'q'"), std::string::npos) << w;
}

TEST_F(Fig1, StraddlingImageViolatesConfinement) {
  HMSModel broken = m;
  broken.pi[0][l.state_ref("pq:pq")] = states(l, {"p:p", "q:q"});
  EXPECT_TRUE(mentions(validate_hms(broken), "confinement"));
  EXPECT_THROW(possibility_space(l, broken.pi[0], l.state_ref("pq:pq")), ModelError);
}

TEST_F(Fig1, ReflexivityAndStationarityViolations) {
  HMSModel broken = m;
  broken.pi[0][l.state_ref("pq:pq")] = states(l, {"p:~p"});
  EXPECT_TRUE(mentions(validate_hms(broken), "generalized-reflexivity"));
  HMSModel unstable = m;
  unstable.pi[0][l.state_ref("p:p")] = states(l, {"p:p", "p:~p"});
  EXPECT_FALSE(validate_hms(unstable).ok());
}

TEST_F(Fig1, ValuationBaseSpaceConvention) {
  LatticeBuilder b({"p"}, {"1"});
  b.add_space(1, {"a", "b"});
  b.add_space(0, {"*"});
  b.add_projection(1, 0, {{"a", "*"}, {"b", "*"}});
  b.set_valuation(0, 0, {"*"});
  HMSModel odd{b.build(), {}};
  odd.pi.push_back(detail::correspondence(odd.frame, {{{"p:a", "p:b", ":*"}, {":*"}}}));
  EXPECT_TRUE(mentions(validate_hms(odd), "valuation.base-space"));
  EXPECT_TRUE(passes(validate_hms(odd, {true})));
}

TEST(SingleSpace, Degenerate) {
  HMSModel m = single_space();
  EXPECT_TRUE(passes(validate_hms(m)));
  EXPECT_TRUE(passes(explicit_property_suite(m)));
}

TEST_F(Fig1, KnowledgeOperator) {
  const int pq = l.state_ref("pq:pq");
  Event kp = k_op(m, 0, l.valuation(0));
  EXPECT_TRUE(up_closure(l, kp).test(pq));
  EXPECT_EQ(k_op(m, 0, omega_event(l)), omega_event(l));
  AtomMask q = l.parse_space_key("q");
  EXPECT_EQ(k_op(m, 0, vacuous_event(l, q)), vacuous_event(l, q));
}

TEST_F(Fig1, AwarenessOperator) {
  const int pq = l.state_ref("pq:pq");
  EXPECT_FALSE(up_closure(l, a_op(m, 0, l.valuation(1))).test(pq));
  StateSet ap = up_closure(l, a_op(m, 0, l.valuation(0)));
  EXPECT_TRUE(l.space_set(l.top()).is_subset_of(ap));
  EXPECT_TRUE(l.space_set(l.parse_space_key("p")).is_subset_of(ap));
  EXPECT_EQ(up_closure(l, a_op(m, 0, full_event(l, 0))), ~l.empty_set());
  EXPECT_TRUE(up_closure(l, u_op(m, 0, l.valuation(1))).test(pq));
}

TEST_F(Fig1, OperatorsAreBasedAtTheEventSpace) {
  for (const Event& e : event_basis(l, {})) {
    EXPECT_EQ(k_op(m, 0, e).space, e.space);
    EXPECT_EQ(a_op(m, 0, e).space, e.space);
  }
}

TEST_F(Fig1, ExplicitSuitePasses) {
  Report r = explicit_property_suite(m);
  EXPECT_TRUE(passes(r));
  EXPECT_GT(r.checks, 500u);
  EXPECT_TRUE(passes(explicit_property_suite(fig1R().base)));
}

TEST_F(Fig1, SuiteRefusesInvalidModels) {
  HMSModel broken = m;
  broken.pi[0][l.state_ref("q:q")] = states(l, {"q:q"});
  try {
    explicit_property_suite(broken);
    FAIL() << "expected PreconditionFailed";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
  }
}

TEST(Fuzzed, ExplicitSuiteOnGeneratedModels) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    ComplementedHMSModel c = gen_hms(seed, {3, 5, 2});
    ASSERT_TRUE(passes(validate_hms(c.base))) << "seed " << seed;
    ASSERT_TRUE(passes(explicit_property_suite(c.base))) << "seed " << seed;
  }
}
