#include <gtest/gtest.h>

#include "normspace/verify.hpp"
#include "test_util.hpp"

using namespace normspace;

namespace {
RunConfig small_config() {
  RunConfig c;
  c.samples = 500;
  return c;
}
}  // namespace

TEST(Verify, SuiteNames) {
  EXPECT_EQ(suite_names().size(), 9u);
  EXPECT_NS_ERROR(run_suites("nope", small_config()), ParameterOutOfRange);
  RunConfig bad = small_config();
  bad.tol = 0.0;
  EXPECT_NS_ERROR(run_suites("apex", bad), ParameterOutOfRange);
}

TEST(Verify, EverySuitePassesAtReducedSize) {
  for (const auto& name : suite_names()) {
    const auto results = run_suites(name, small_config());
    ASSERT_EQ(results.size(), 1u);
    EXPECT_TRUE(results[0].ok()) << name << ": " << results[0].failures.front().check << " "
                                 << results[0].failures.front().witness.dump();
    EXPECT_GT(results[0].cases, 0u);
  }
}

TEST(Verify, ReportIsDeterministic) {
  const auto a = suite_report(run_suites("rs1n", small_config()), small_config()).dump();
  const auto b = suite_report(run_suites("rs1n", small_config()), small_config()).dump();
  EXPECT_EQ(a, b);
  RunConfig other = small_config();
  other.seed = 5;
  EXPECT_NE(suite_report(run_suites("rs1n", other), other).dump(), a);
}

TEST(Verify, PipelineRecordsCounterexample) {
  const auto r = run_suites("pipeline", small_config());
  ASSERT_EQ(r[0].notes.size(), 2u);
  EXPECT_NE(r[0].notes[1].find("ratio 2"), std::string::npos);
}

TEST(Verify, ReportOmitsWallTime) {
  const auto j = suite_report(run_suites("apex", small_config()), small_config());
  EXPECT_FALSE(j["suites"][0].contains("wall_seconds"));
  EXPECT_EQ(j["ok"], true);
}
