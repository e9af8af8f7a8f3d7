#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace normspace {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 10000;  // random sample-domain points per norm comparison
  int refine_iters = 64;
  double tol = 1e-9;            // tolerance for estimator-vs-closed-form checks
  unsigned threads = 1;
};

struct SuiteFailure {
  std::string check;
  nlohmann::json witness;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;  // seed of this suite's private stream
  std::size_t cases = 0;
  std::vector<SuiteFailure> failures;
  std::vector<std::string> notes;  // expected, documented outcomes
  double wall_seconds = 0.0;       // not serialised

  bool ok() const noexcept { return failures.empty(); }
};

/// plp, pskp, mixture, rs1n, apex, diamnorm, schoenberg, isometries, pipeline.
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Throws
/// ParameterOutOfRange for an unknown name or an invalid config.
std::vector<SuiteResult> run_suites(std::string_view name, const RunConfig& config);

/// Deterministic report: everything except wall time.
nlohmann::json suite_report(const std::vector<SuiteResult>& results, const RunConfig& config);

}  // namespace normspace
