// Acceptance run: one PASS/FAIL line per criterion. Thresholds are fixed here.

#include "awarekit/awarekit.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace awarekit;

namespace {

constexpr GenCaps kCaps{3, 5, 2};
constexpr int kExplicitModels = 100;
constexpr int kImplicitModels = 100;
constexpr int kDerivationModels = 100;
constexpr int kCategoryModels = 50;
constexpr int kTransformModels = 50;
constexpr int kLpaTrials = 200;
constexpr int kMutationTrials = 30;
constexpr int kEnumDepth = 2;
constexpr double kFixtureSeconds = 1.0;
constexpr double kExplicitSeconds = 60.0;
constexpr double kTransformSeconds = 300.0;
constexpr std::size_t kSchemata = 12;
constexpr std::size_t kRules = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string first_failure(const Report& r) {
  if (r.ok())
    return {};
  return r.violations.front().law + " [" + r.violations.front().witness + "] (" +
         std::to_string(r.violations.size()) + " total)";
}

Outcome from_report(const Report& r, std::string summary) {
  if (r.ok())
    return {true, std::move(summary)};
  return {false, first_failure(r)};
}

SuiteOptions corpus(int trials) {
  SuiteOptions o;
  o.caps = kCaps;
  o.trials = trials;
  o.seed = 1;
  o.enumeration.depth = kEnumDepth;
  return o;
}

std::string data_path(const std::string& rel) { return std::string(AWAREKIT_DATA_DIR) + "/" + rel; }

Outcome fixtures() {
  Report r;
  ComplementedHMSModel l = fig1L(), rr = fig1R();
  for (const auto* c : {&l, &rr}) {
    r.merge(validate_hms(c->base));
    r.merge(validate_lambda(*c));
  }
  auto value = [&](const ComplementedHMSModel& c, const char* f, TruthValue want, const char* name) {
    TruthValue got = satisfies(c, c.lattice().state_ref("p,q:pq"), parse(f));
    r.expect(got == want, std::string(name) + " " + f, std::string(to_string(got)));
  };
  value(l, "k_1 p", TruthValue::True, "fig1L");
  value(l, "a_1 q", TruthValue::False, "fig1L");
  value(rr, "l_1 q", TruthValue::True, "fig1R");
  value(rr, "a_1 q", TruthValue::False, "fig1R");
  value(rr, "k_1 q", TruthValue::False, "fig1R");
  return from_report(r, "5 truth values at pq match");
}

Outcome suite(Suite s, int trials, const std::string& what) {
  Report r = run_suite(s, corpus(trials));
  return from_report(r, std::to_string(r.checks) + " checks over " + what);
}

Outcome derivation() {
  Report r = run_suite(Suite::Derivation, corpus(kDerivationModels));
  for (int t = 0; t < kDerivationModels; ++t) {
    ImplicitHMSModel im = gen_implicit(1 + t, kCaps);
    ComplementedHMSModel c = derive_pi_star(im);
    r.merge(validate_hms(c.base), "derived.");
    r.merge(validate_lambda(c), "derived.");
  }
  return from_report(r, std::to_string(r.checks) + " checks over " + std::to_string(kDerivationModels) +
                            " implicit-knowledge-based models");
}

Outcome lpa() {
  Report r;
  FuzzOptions fo;
  fo.trials = kLpaTrials;
  fo.caps = kCaps;
  fo.depth = kEnumDepth;
  FuzzStats st;
  r.merge(fuzz_soundness(fo, &st));
  r.expect(schema_names().size() == kSchemata && rule_names().size() == kRules, "schema-count",
           std::to_string(schema_names().size()) + "+" + std::to_string(rule_names().size()));

  int accepted = 0, rejected = 0;
  for (const auto& entry : std::filesystem::directory_iterator(data_path("proofs"))) {
    if (entry.path().extension() != ".proof")
      continue;
    ProofVerdict v = check_proof(load_proof(entry.path().string()));
    r.expect(v.accepted, "proof-accepted", entry.path().filename().string() + ": " + v.reason);
    accepted += v.accepted;
  }
  std::ifstream in(data_path("proofs/corrupted/manifest.json"));
  json manifest = json::parse(in);
  for (auto& [file, line] : manifest.items()) {
    ProofVerdict v = check_proof(load_proof(data_path("proofs/corrupted/" + file)));
    bool ok = !v.accepted && v.failing_line == line.get<int>();
    r.expect(ok, "proof-rejected", file + ": got line " + std::to_string(v.failing_line));
    rejected += ok;
  }
  r.expect(manifest.size() == 10, "corrupted-count", std::to_string(manifest.size()));
  std::ostringstream s;
  s << st.instances_checked << " instances, " << st.rule_checks << " rule checks, " << accepted
    << " proofs accepted, " << rejected << " corrupted proofs rejected at the listed line";
  return from_report(r, s.str());
}

Outcome mutations() {
  SuiteOptions o = corpus(kMutationTrials);
  std::string caught, missed;
  for (Mutation m : all_mutations) {
    ProbeResult p = probe_mutation(m, o);
    std::string& into = p.caught() ? caught : missed;
    into += std::string(into.empty() ? "" : ", ") + std::string(to_string(m));
    if (p.caught())
      into += " <" + p.first_law + ">";
  }
  if (!missed.empty())
    return {false, "not caught: " + missed};
  return {true, "caught: " + caught};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds; // 0 means no time bound
    std::function<Outcome()> run;
  };
  const std::string corpus_name =
      "fig1L, fig1R and " + std::to_string(kExplicitModels) + " generated complemented HMS models";
  const std::vector<Criterion> criteria{
      {1, "two-panel fixtures", kFixtureSeconds, fixtures},
      {2, "explicit-operator suite", kExplicitSeconds, [&] { return suite(Suite::Explicit, kExplicitModels, corpus_name); }},
      {3, "implicit-layer suite", 0, [&] { return suite(Suite::Implicit, kImplicitModels, corpus_name); }},
      {4, "derivation suite", 0, derivation},
      {5, "category suite", 0,
       [] { return suite(Suite::Category, kCategoryModels, std::to_string(kCategoryModels) + " FH models"); }},
      {6, "transform equivalence", kTransformSeconds,
       [] { return suite(Suite::Transforms, kTransformModels, std::to_string(kTransformModels) + " models per direction"); }},
      {7, "LPA soundness and proofs", 0, lpa},
      {8, "mutation sensitivity", 0, mutations},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    failed += !o.pass;
    std::printf("%s criterion %d %-26s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
