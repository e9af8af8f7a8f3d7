#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output when asked.
Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(NORMSPACE_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(NORMSPACE_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, NormDistL1Linf) {
  const auto r = run("norm-dist " + data("l1.json") + " " + data("linf.json") + " --k 2 --samples 200");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["closed_form"].get<double>(), std::log(2.0), 1e-15);
  EXPECT_NEAR(j["refined"].get<double>(), std::log(2.0), 1e-9);
}

TEST(Cli, NormDistBadExponentExitsTwo) {
  const auto r = run("norm-dist " + data("l1.json") + " " + data("bad_p.json") + " --k 2", true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("ParameterOutOfRange"), std::string::npos);
}

TEST(Cli, NormDistScaledPairIsZero) {
  const auto r = run("norm-dist " + data("l1.json") + " " + data("scaled_l1.json") + " --k 3 --samples 100");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["refined"].get<double>(), 0.0);
  EXPECT_EQ(j["closed_form"].get<double>(), 0.0);
}

TEST(Cli, NormDistNoClosedFormIsNull) {
  const auto r = run("norm-dist " + data("l1.json") + " " + data("perturbed_q1_axis0.json") + " --k 2 --samples 100");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(json::parse(r.out)["closed_form"].is_null());
}

TEST(Cli, NormDistMalformedAndSingular) {
  EXPECT_EQ(run("norm-dist " + data("l1.json") + " " + data("malformed.json") + " --k 2").exit_code, 2);
  EXPECT_EQ(run("norm-dist " + data("l1.json") + " " + data("singular.json")).exit_code, 2);
  EXPECT_EQ(run("norm-dist " + data("l1.json") + " " + data("l2.json")).exit_code, 2);  // no dimension
  EXPECT_EQ(run("norm-dist " + data("l1.json") + " missing.json --k 2").exit_code, 2);
}

TEST(Cli, NormDistCsv) {
  const auto r = run("norm-dist " + data("l1.json") + " " + data("linf.json") + " --k 2 --samples 10 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,lower_bound,refined,closed_form,samples_used,seed");
}

TEST(Cli, MetricDistLineWitness) {
  const auto r = run("metric-dist " + data("discrete3.json") + " " + data("line_witness_3_1.json"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["distance"].get<double>(), std::log(4.0), 1e-15);
  EXPECT_EQ(j["proportional"], false);
}

TEST(Cli, MetricDistEqualAndProportional) {
  auto j = json::parse(run("metric-dist " + data("discrete3.json") + " " + data("discrete3.csv") + " --isometry").out);
  EXPECT_EQ(j["distance"].get<double>(), 0.0);
  EXPECT_EQ(j["isometric"], true);
  j = json::parse(run("metric-dist " + data("discrete3.json") + " " + data("discrete3_x2.json")).out);
  EXPECT_EQ(j["scale"].get<double>(), 2.0);
}

TEST(Cli, MetricDistTriangleViolationNamesTriple) {
  const auto r = run("metric-dist " + data("triangle_violation.csv") + " " + data("triangle_violation.csv"), true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("TriangleViolation"), std::string::npos);
  EXPECT_NE(r.out.find("(1,0,3)"), std::string::npos);
}

TEST(Cli, MetricDistSizeMismatch) {
  EXPECT_EQ(run("metric-dist " + data("discrete3.json") + " " + data("star_k13.json")).exit_code, 2);
}

TEST(Cli, EmbedSchoenbergStar) {
  const auto r = run("embed schoenberg " + data("star_k13.json"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["embeddable"], false);
  EXPECT_NEAR(j["eigenvalues"].back().get<double>(), -2.0, 1e-12);
}

TEST(Cli, EmbedFrechet) {
  const auto j = json::parse(run("embed frechet " + data("line3.json")).out);
  EXPECT_EQ(j["sup_norm_exact"], true);
  EXPECT_EQ(j["coords"], json::parse("[[1.0, 2.0], [0.0, 1.0], [1.0, 0.0]]"));
  EXPECT_EQ(run("embed frechet " + data("line3.json") + " --format csv").out, "1,2\n0,1\n1,0\n");
  EXPECT_EQ(run("embed frechet " + data("line3.json") + " --base 7").exit_code, 2);
}

TEST(Cli, EmbedSnEquilateral) {
  const auto r = run("embed sn " + data("equilateral_log2.json") + " --n 3");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["membership_ok"], true);
  EXPECT_GE(j["min_ratio"].get<double>(), 1.0 - 1e-12);
  EXPECT_LE(j["max_ratio"].get<double>(), 2.0 + 1e-12);
  EXPECT_EQ(run("embed sn " + data("star_k13.json") + " --n 3").exit_code, 2);
  EXPECT_EQ(run("embed sn " + data("star_k13.json")).exit_code, 2);
}

TEST(Cli, EmbedPsi) {
  const auto j = json::parse(run("embed psi " + data("discrete3.json")).out);
  EXPECT_EQ(j["psi"], json::parse("[0.0, 0.0, 0.0]"));
}

TEST(Cli, SampleDomainJsonAndCsv) {
  auto j = json::parse(run("sample-domain --k 2 --samples 3 --seed 9").out);
  EXPECT_EQ(j["points"].size(), 8u);
  EXPECT_EQ(j["seed"], 9);
  j = json::parse(run("sample-domain --center 1,2 --samples 4").out);
  EXPECT_EQ(j["kind"]["type"], "off_center");
  EXPECT_EQ(run("sample-domain --center 0,0").exit_code, 2);
  EXPECT_EQ(run("sample-domain").exit_code, 2);
}

TEST(Cli, VerifySuiteAndExitCodes) {
  const auto r = run("verify apex --seed 3");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(run("verify apex --seed 3").out, r.out);
  EXPECT_EQ(run("verify unknown").exit_code, 2);
  EXPECT_EQ(run("verify apex --tol -1").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST(Cli, OutputFile) {
  const std::string path = testing::TempDir() + "normspace_cli_out.json";
  std::remove(path.c_str());
  ASSERT_EQ(run("embed psi " + data("discrete3.json") + " --output " + path).exit_code, 0);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}
