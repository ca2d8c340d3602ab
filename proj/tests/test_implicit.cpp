#include "support.hpp"

using namespace awarekit;
using namespace awarekit::test;

namespace {

/// fig1R's lattice and Lambda as Lambda*, awareness read off fig1's Pi.
ImplicitHMSModel fig1R_implicit() {
  ComplementedHMSModel r = fig1R();
  const Lattice& l = r.lattice();
  ImplicitHMSModel im{l, r.lambda, {}};
  im.alpha.assign(1, std::vector<AtomMask>(l.state_count(), 0));
  for (int g = 0; g < l.state_count(); ++g)
    im.alpha[0][g] = possibility_space(l, r.base.pi[0], g);
  return im;
}

ImplicitHMSModel with_alpha(const ComplementedHMSModel& c, const std::function<AtomMask(int)>& level) {
  const Lattice& l = c.lattice();
  ImplicitHMSModel im{l, c.lambda, {}};
  im.alpha.assign(1, std::vector<AtomMask>(l.state_count(), 0));
  for (int g = 0; g < l.state_count(); ++g)
    im.alpha[0][g] = level(g);
  return im;
}

} // namespace

TEST(Lambda, FixturesValidate) {
  EXPECT_TRUE(passes(validate_lambda(fig1L())));
  EXPECT_TRUE(passes(validate_lambda(fig1R())));
}

TEST(Lambda, SplittingOnlyOneCellBreaksImplicitKnowledgeProjection) {
  ComplementedHMSModel c = fig1L();
  const Lattice& l = c.lattice();
  c.lambda[0][l.state_ref("pq:~pq")] = states(l, {"pq:~pq"});
  c.lambda[0][l.state_ref("pq:~p~q")] = states(l, {"pq:~p~q"});
  EXPECT_TRUE(mentions(validate_lambda(c), "projections-preserve-implicit-knowledge")) << validate_lambda(c);
}

TEST(Lambda, StrongConfinementAndPartition) {
  for (const auto& c : {fig1L(), fig1R(), gen_hms(3, {3, 5, 2}), gen_hms(11, {3, 5, 2})}) {
    const Lattice& l = c.lattice();
    for (int i = 0; i < l.agent_count(); ++i)
      for (AtomMask s = 0; s < l.space_count(); ++s) {
        StateSet covered = l.empty_set();
        for (int g = l.begin_of(s); g < l.end_of(s); ++g) {
          ASSERT_TRUE(c.lambda[i][g].is_subset_of(l.space_set(s)));
          ASSERT_TRUE(c.lambda[i][g].test(g));
          for (int t = l.begin_of(s); t < l.end_of(s); ++t)
            if (c.lambda[i][g].test(t))
              ASSERT_EQ(c.lambda[i][t], c.lambda[i][g]);
          covered |= c.lambda[i][g];
        }
        ASSERT_EQ(covered, l.space_set(s));
      }
  }
}

TEST(Lambda, CoherenceWithPossibilitySets) {
  ComplementedHMSModel c = fig1L();
  const Lattice& l = c.lattice();
  for (int g = 0; g < l.state_count(); ++g) {
    AtomMask s = possibility_space(l, c.base.pi[0], g);
    auto proj = project_set(l, c.lambda[0][g], s);
    ASSERT_TRUE(proj.has_value());
    EXPECT_EQ(*proj, c.base.pi[0][g]) << l.state_name(g);
  }
}

TEST(ImplicitKnowledge, FixtureExamples) {
  ComplementedHMSModel r = fig1R(), lft = fig1L();
  const Lattice& l = r.lattice();
  const int pq = l.state_ref("pq:pq");
  EXPECT_TRUE(up_closure(l, l_op(r, 0, l.valuation(1))).test(pq));
  EXPECT_FALSE(up_closure(l, l_op(lft, 0, l.valuation(1))).test(pq));
  EXPECT_EQ(l_op(r, 0, omega_event(l)), omega_event(l));
  EXPECT_EQ(l_op(lft, 0, omega_event(l)), omega_event(l));
}

TEST(ImplicitKnowledge, KnowsOwnUnawareness) {
  ComplementedHMSModel r = fig1R();
  const Lattice& l = r.lattice();
  const int pq = l.state_ref("pq:pq");
  Event unaware = u_op(r, 0, l.valuation(1));
  EXPECT_TRUE(up_closure(l, unaware).test(pq));
  EXPECT_TRUE(up_closure(l, l_op(r, 0, unaware)).test(pq));
}

TEST(ImplicitSuite, Fixtures) {
  Report r = implicit_property_suite(fig1L());
  EXPECT_TRUE(passes(r));
  EXPECT_GT(r.checks, 500u);
  EXPECT_TRUE(passes(implicit_property_suite(fig1R())));
}

TEST(ImplicitSuite, Fuzzed) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed)
    ASSERT_TRUE(passes(implicit_property_suite(gen_hms(seed, {3, 5, 2})))) << "seed " << seed;
}

TEST(Candidate, RecoversLeftPanel) {
  CandidateResult res = candidate_lambda_from_pi(fig1L().base);
  ASSERT_TRUE(res.model.has_value()) << res.report;
  EXPECT_EQ(res.model->lambda, fig1L().lambda);
}

TEST(Candidate, SingleSpaceGivesPi) {
  LatticeBuilder b({}, {"1"});
  b.add_space(0, {"a", "b"});
  HMSModel m{b.build(), {}};
  m.pi.push_back(detail::correspondence(m.frame, {{{":a", ":b"}, {":a", ":b"}}}));
  CandidateResult res = candidate_lambda_from_pi(m);
  ASSERT_TRUE(res.model.has_value()) << res.report;
  EXPECT_EQ(res.model->lambda, m.pi);
}

TEST(Candidate, OutcomesOnFuzzedModelsAreConsistent) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    ComplementedHMSModel c = gen_hms(seed, {3, 4, 2});
    CandidateResult res = candidate_lambda_from_pi(c.base);
    EXPECT_EQ(res.model.has_value(), res.report.ok());
  }
}

TEST(Alpha, FixtureRightValidates) {
  ImplicitHMSModel im = fig1R_implicit();
  EXPECT_TRUE(passes(validate_implicit(im)));
}

TEST(Alpha, TTransformOutputValidates) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    ASSERT_TRUE(passes(validate_alpha(gen_implicit(seed, {3, 5, 2})))) << "seed " << seed;
}

TEST(Alpha, ProjectionBelowAwarenessMustBeFullyAware) {
  ComplementedHMSModel lft = fig1L();
  const Lattice& l = lft.lattice();
  const int p = l.state_ref("p:p");
  ImplicitHMSModel im = with_alpha(lft, [&](int g) { return g == p ? AtomMask{0} : l.space_of(g); });
  EXPECT_TRUE(mentions(validate_alpha(im), "alpha.II")) << validate_alpha(im);
}

TEST(Alpha, MustBeConstantOnCells) {
  ComplementedHMSModel lft = fig1L();
  const Lattice& l = lft.lattice();
  const int pnq = l.state_ref("pq:p~q");
  ImplicitHMSModel im = with_alpha(lft, [&](int g) { return g == pnq ? l.parse_space_key("p") : l.space_of(g); });
  EXPECT_TRUE(mentions(validate_alpha(im), "alpha.I-awareness-measurability"));
}

TEST(Alpha, LackOfConception) {
  ComplementedHMSModel lft = fig1L();
  const Lattice& l = lft.lattice();
  ImplicitHMSModel im = with_alpha(lft, [&](int) { return l.top(); });
  EXPECT_TRUE(mentions(validate_alpha(im), "alpha.O-lack-of-conception"));
}

TEST(Derive, FixtureRightRecoversPi) {
  ImplicitHMSModel im = fig1R_implicit();
  ComplementedHMSModel c = derive_pi_star(im);
  EXPECT_EQ(c.base.pi, fig1R().base.pi);
  EXPECT_EQ(c.lambda, fig1R().lambda);
}

TEST(Derive, FullAwarenessGivesLambdaStar) {
  ComplementedHMSModel lft = fig1L();
  const Lattice& l = lft.lattice();
  ImplicitHMSModel im = with_alpha(lft, [&](int g) { return l.space_of(g); });
  ComplementedHMSModel c = derive_pi_star(im);
  EXPECT_EQ(c.base.pi, lft.lambda);
}

TEST(Derive, NoAwarenessProjectsToTheMeet) {
  ComplementedHMSModel lft = fig1L();
  const Lattice& l = lft.lattice();
  ImplicitHMSModel im = with_alpha(lft, [](int) { return AtomMask{0}; });
  ComplementedHMSModel c = derive_pi_star(im);
  for (int g = 0; g < l.state_count(); ++g)
    EXPECT_EQ(c.base.pi[0][g], l.space_set(0));
}

TEST(Derive, ReportsInvalidAlpha) {
  ComplementedHMSModel lft = fig1L();
  const Lattice& l = lft.lattice();
  ImplicitHMSModel im = with_alpha(lft, [&](int) { return l.top(); });
  try {
    derive_pi_star(im);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
  }
}

TEST(AStar, FixtureRight) {
  ImplicitHMSModel im = fig1R_implicit();
  const Lattice& l = im.frame;
  EXPECT_FALSE(up_closure(l, a_star_op(im, 0, l.valuation(1))).test(l.state_ref("pq:pq")));
  EXPECT_EQ(up_closure(l, a_star_op(im, 0, full_event(l, 0))), ~l.empty_set());
  ComplementedHMSModel c = derive_pi_star(im);
  for (const Event& e : event_basis(l, {}))
    EXPECT_EQ(a_star_op(im, 0, e), a_op(c, 0, e));
}

TEST(DerivationSuite, FixtureAndFuzzed) {
  EXPECT_TRUE(passes(derivation_property_suite(fig1R_implicit())));
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    ImplicitHMSModel im = gen_implicit(seed, {3, 5, 2});
    ComplementedHMSModel c = derive_pi_star(im);
    ASSERT_TRUE(passes(validate_hms(c.base))) << "seed " << seed;
    ASSERT_TRUE(passes(derivation_property_suite(im))) << "seed " << seed;
  }
}
