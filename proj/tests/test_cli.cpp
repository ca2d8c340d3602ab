#include "support.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace awarekit;
using namespace awarekit::test;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(AWAREKIT_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p)
    return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sh(const std::string& s) { return "'" + s + "'"; }

std::string scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "awarekit-cli-tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

const std::string L = sh(data_path("fig1L.model"));
const std::string R = sh(data_path("fig1R.model"));

} // namespace

TEST(Cli, CheckSingleState) {
  CliRun r = cli("check " + L + " --formula 'a_1 q' --state 'pq:pq'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "False\n");
  EXPECT_EQ(cli("check " + L + " --formula 'k_1 p' --state 'p,q:pq'").out, "True\n");
  EXPECT_EQ(cli("check " + R + " --formula 'l_1 q' --state 'pq:pq'").out, "True\n");
}

TEST(Cli, CheckAllStates) {
  CliRun r = cli("check " + L + " --formula 'q' --all");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("p:p\tUndefined\n"), std::string::npos);
  EXPECT_NE(r.out.find("p,q:pq\tTrue\n"), std::string::npos);
}

TEST(Cli, Validate) {
  EXPECT_EQ(cli("validate " + L).code, 0);
  EXPECT_EQ(cli("validate " + R + " --suites").code, 0);
  CliRun dot = cli("validate " + L + " --dot");
  EXPECT_NE(dot.out.find("digraph"), std::string::npos);
}

TEST(Cli, ValidateReportsViolations) {
  json j = to_json(fig1L());
  j["lambda"]["1"] = j["pi"]["1"];
  j["pi"]["1"]["p,q:pq"] = {"p,q:~pq"};
  std::string path = scratch("broken.model");
  std::ofstream(path) << j.dump();
  CliRun r = cli("--format data validate " + sh(path));
  EXPECT_EQ(r.code, 1);
  Report back = report_from_json(json::parse(r.out)["report"]);
  EXPECT_FALSE(back.ok());
}

TEST(Cli, TransformThenEquiv) {
  std::string out = scratch("fig1R.fh");
  ASSERT_EQ(cli("transform " + R + " --to fh --out " + sh(out)).code, 0);
  EXPECT_TRUE(std::holds_alternative<FHModel>(load_model(out)));
  CliRun e = cli("equiv " + R + " " + sh(out) + " --via fh --depth 2");
  EXPECT_EQ(e.code, 0) << e.out;

  std::string hms = scratch("back.model");
  ASSERT_EQ(cli("transform " + sh(out) + " --to hms --out " + sh(hms)).code, 0);
  EXPECT_EQ(cli("equiv " + sh(out) + " " + sh(hms) + " --via hms").code, 0);
  std::string im = scratch("back.implicit");
  ASSERT_EQ(cli("transform " + sh(out) + " --to implicit-hms --out " + sh(im)).code, 0);
  std::string star = scratch("star.fh");
  ASSERT_EQ(cli("transform " + sh(im) + " --to fh-star --out " + sh(star)).code, 0);
  EXPECT_EQ(cli("equiv " + sh(im) + " " + sh(star) + " --via fh-star").code, 0);
}

TEST(Cli, DumpCategory) {
  std::string fh = scratch("dump.fh");
  ASSERT_EQ(cli("transform " + L + " --to fh --out " + sh(fh)).code, 0);
  std::string dir = scratch("dump");
  std::filesystem::remove_all(dir);
  EXPECT_EQ(cli("transform " + sh(fh) + " --to hms --dump-category " + sh(dir) + " --out /dev/null").code, 0);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "morphisms.json"));
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("validate /nonexistent/file.model").code, 2);
  EXPECT_EQ(cli("check " + L + " --formula 'a_9 q'").code, 2);
  EXPECT_EQ(cli("check " + L + " --formula 'a_1 (q'").code, 2);
  EXPECT_EQ(cli("check " + L + " --formula 'q' --state 'p:nowhere'").code, 2);
  std::string path = scratch("malformed.model");
  std::ofstream(path) << "{\"kind\": \"fh\", \"worlds\": 3}";
  EXPECT_EQ(cli("validate " + sh(path)).code, 2);
  EXPECT_EQ(cli("gen --seed 1 --atoms 0").code, 2);
  EXPECT_EQ(cli("fuzz --trials 1 --mutation no-such-thing").code, 2);
}

TEST(Cli, GenIsDeterministicAndValid) {
  CliRun a = cli("gen --seed 3 --kind fh --atoms 2 --worlds 3 --agents 1");
  CliRun b = cli("gen --seed 3 --kind fh --atoms 2 --worlds 3 --agents 1");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  FHModel k = std::get<FHModel>(model_from_json(json::parse(a.out)));
  EXPECT_TRUE(passes(validate_fh(k)));
}

TEST(Cli, Fuzz) {
  EXPECT_EQ(cli("fuzz --trials 5 --seed 11").code, 0);
  CliRun m = cli("--format data fuzz --trials 5 --suite explicit --mutation negation-top-space");
  EXPECT_EQ(m.code, 1);
  EXPECT_FALSE(report_from_json(json::parse(m.out)["report"]).ok());
}

TEST(Cli, Lpa) {
  CliRun ok = cli("lpa check " + sh(data_path("proofs/top.proof")));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "accepted\n");
  CliRun bad = cli("lpa check " + sh(data_path("proofs/corrupted/c03_mp_non_implication.proof")));
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("rejected at line 3:", 0), 0u) << bad.out;
  CliRun data = cli("--format data lpa check " + sh(data_path("proofs/corrupted/c04_unknown_schema.proof")));
  EXPECT_EQ(json::parse(data.out)["failing_line"], 1);
  EXPECT_EQ(cli("lpa fuzz --trials 10").code, 0);
}
