#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace awarekit;
using namespace awarekit::test;

TEST(Schemata, Inventory) {
  EXPECT_EQ(schema_names().size(), 12u);
  EXPECT_EQ(rule_names().size(), 2u);
  EXPECT_EQ(match_schema("mp", parse("p")), std::nullopt);
  EXPECT_THROW(match_schema("no-such-schema", parse("p")), ModelError);
}

TEST(Schemata, AwarenessOfNegation) {
  auto s = match_schema("a-neg", parse("a_1 ~p <-> a_1 p"));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->formulas.at("phi"), parse("p"));
  EXPECT_EQ(s->agents.at("i"), "1");
  EXPECT_EQ(match_schema("a-neg", parse("a_1 p -> a_1 q")), std::nullopt);
  EXPECT_EQ(match_schema("a-neg", parse("a_1 ~p <-> a_2 p")), std::nullopt);
}

TEST(Schemata, KnowledgeDefinition) {
  EXPECT_TRUE(match_schema("k-def", parse("k_1 p <-> (l_1 p & a_1 p)")).has_value());
  EXPECT_FALSE(match_schema("k-def", parse("k_1 p <-> (l_1 p & a_1 q)")).has_value());
}

TEST(Schemata, CrossAgentAwareness) {
  auto s = match_schema("a-k", parse("a_1 k_2 (p & q) <-> a_1 (p & q)"));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->agents.at("j"), "2");
}

TEST(Schemata, InstantiateInvertsMatch) {
  Rng rng(3);
  for (const auto& name : schema_names()) {
    Substitution sub;
    sub.formulas.emplace("phi", random_formula(rng, {"p", "q"}, {"1", "2"}, 2));
    sub.formulas.emplace("psi", random_formula(rng, {"p", "q"}, {"1", "2"}, 2));
    sub.agents.emplace("i", "1");
    sub.agents.emplace("j", "2");
    Formula f = instantiate(name, sub);
    auto back = match_schema(name, f);
    ASSERT_TRUE(back.has_value()) << name;
    EXPECT_EQ(instantiate(name, *back), f);
  }
}

TEST(Tautology, Skeleton) {
  EXPECT_TRUE(is_tautology(parse("p | ~p")));
  EXPECT_TRUE(is_tautology(parse("a_1 p -> a_1 p")));
  EXPECT_TRUE(is_tautology(parse("T")));
  EXPECT_FALSE(is_tautology(parse("p")));
  EXPECT_FALSE(is_tautology(parse("l_1 p -> p")));
  EXPECT_FALSE(is_tautology(parse("l_1 p -> l_1 ~~p")));
}

TEST(Tautology, NeverAcceptsFalsifiableSkeletons) {
  Rng rng(11);
  int accepted = 0;
  for (int n = 0; n < 400; ++n) {
    Formula f = Formula::disj(random_formula(rng, {"p", "q"}, {"1"}, 1, 5), random_formula(rng, {"p", "q"}, {"1"}, 1, 5));
    if (!is_tautology(f))
      continue;
    ++accepted;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ComplementedHMSModel c = gen_hms(seed, {2, 3, 1});
      if (c.lattice().atom_count() < 2)
        continue;
      ASSERT_TRUE(valid_in_model(c, f).valid) << render(f);
    }
  }
  EXPECT_GT(accepted, 0);
}

namespace {

std::vector<ProofLine> lines_of(std::initializer_list<std::pair<const char*, const char*>> xs) {
  std::vector<ProofLine> out;
  for (const auto& [f, by] : xs)
    out.push_back(make_line(f, by));
  return out;
}

std::vector<std::filesystem::path> proofs_in(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".proof")
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProofLine> shifted(std::vector<ProofLine> lines, int offset) {
  for (auto& l : lines) {
    std::istringstream in(l.by);
    std::string rule;
    in >> rule;
    if (rule == "mp") {
      int i, j;
      in >> i >> j;
      l.by = "mp " + std::to_string(i + offset) + " " + std::to_string(j + offset);
    } else if (rule == "nec") {
      int i;
      in >> i;
      l.by = "nec " + std::to_string(i + offset);
    }
  }
  return lines;
}

} // namespace

TEST(CheckProof, SmallProofs) {
  EXPECT_TRUE(check_proof(lines_of({{"T", "taut"}})).accepted);
  EXPECT_TRUE(check_proof({}).accepted);
  ProofVerdict v = check_proof(lines_of({{"p", "taut"}}));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.failing_line, 1);
  v = check_proof(lines_of({{"a_1 ~p <-> a_1 p", "ax:a-neg"}, {"p & q", "taut"}, {"q", "mp 1 2"}}));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.failing_line, 2);
  v = check_proof(lines_of({{"a_1 ~p <-> a_1 p", "ax:a-neg"}, {"a_1 p", "mp 1 1"}}));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.failing_line, 2);
}

TEST(CheckProof, ShippedProofsAreAccepted) {
  auto files = proofs_in(data_path("proofs"));
  ASSERT_GE(files.size(), 5u);
  for (const auto& f : files) {
    ProofVerdict v = check_proof(load_proof(f.string()));
    EXPECT_TRUE(v.accepted) << f << ": line " << v.failing_line << ": " << v.reason;
  }
}

TEST(CheckProof, CorruptedProofsFailAtTheDocumentedLine) {
  std::ifstream in(data_path("proofs/corrupted/manifest.json"));
  json manifest = json::parse(in);
  ASSERT_EQ(manifest.size(), 10u);
  for (const auto& [name, line] : manifest.items()) {
    ProofVerdict v = check_proof(load_proof(data_path("proofs/corrupted/" + name)));
    EXPECT_FALSE(v.accepted) << name;
    EXPECT_EQ(v.failing_line, line.get<int>()) << name << ": " << v.reason;
  }
}

TEST(CheckProof, AcceptanceIsMonotoneUnderConcatenation) {
  auto files = proofs_in(data_path("proofs"));
  for (const auto& a : files)
    for (const auto& b : files) {
      auto first = load_proof(a.string());
      auto second = load_proof(b.string());
      const int offset = static_cast<int>(first.size());
      for (auto& l : shifted(second, offset))
        first.push_back(l);
      EXPECT_TRUE(check_proof(first).accepted) << a << " + " << b;
    }
}

TEST(CheckProof, ParseErrors) {
  std::istringstream bad("{\"formula\": \"p\"}\n");
  EXPECT_THROW(parse_proof(bad), ModelError);
  std::istringstream ok("\n{\"formula\": \"T\", \"by\": \"taut\"}\n\n");
  EXPECT_EQ(parse_proof(ok).size(), 1u);
  EXPECT_THROW(load_proof("/nonexistent/proof"), ModelError);
}

TEST(Soundness, FuzzFindsNoCounterexamples) {
  FuzzOptions o;
  o.trials = 30;
  FuzzStats st;
  Report r = fuzz_soundness(o, &st);
  EXPECT_TRUE(passes(r));
  EXPECT_GE(st.instances_checked, 30u * 13u * 3u);
  EXPECT_GT(st.rule_checks, 0u);
}

TEST(Soundness, TruthInstanceOfTopIsValid) {
  Formula f = parse("l_1 T -> T");
  EXPECT_TRUE(match_schema("T", f).has_value());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EXPECT_TRUE(valid_in_model(gen_hms(seed, {2, 4, 1}), f).valid);
    EXPECT_TRUE(valid_in_model(gen_implicit(seed, {2, 4, 1}), f).valid);
    EXPECT_TRUE(valid_in_category(build_category(gen_fh(seed, {2, 4, 1})), f).valid);
  }
}

TEST(Soundness, ShallowAwarenessClauseIsCaught) {
  mutation::Scoped m(Mutation::FhAwarenessShallow);
  FuzzOptions o;
  o.trials = 30;
  Report r = fuzz_soundness(o);
  EXPECT_TRUE(mentions(r, "schema a-k") || mentions(r, "schema a-a") || mentions(r, "schema a-l")) << r;
}
