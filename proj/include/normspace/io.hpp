#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "normspace/diamnorm.hpp"
#include "normspace/embeddings.hpp"
#include "normspace/estimate.hpp"
#include "normspace/metric.hpp"
#include "normspace/norms.hpp"
#include "normspace/sample_domain.hpp"

// JSON and CSV encodings. Malformed input throws Error(Parse); well-formed
// input that breaks a library precondition throws that precondition's code.
namespace normspace::io {

using nlohmann::json;

/// Whole file as a string; Parse error when it cannot be opened.
std::string read_file(const std::string& path);
json parse_json(std::string_view text);

/// {"n": n, "d": [[i, j, value], ...]}, i < j, lexicographic.
json metric_to_json(const FiniteMetric& r);
/// Every pair must appear exactly once.
FiniteMetric metric_from_json(const json& j);
/// Full symmetric matrix, one row per line, comma separated.
FiniteMetric metric_from_csv(std::string_view text);
/// Dispatches on the extension: ".csv" is CSV, anything else JSON.
FiniteMetric load_metric(const std::string& path);

/// Recursive {"kind": ...} encoding; p may be the string "inf".
json norm_to_json(const NormSpec& spec);
NormSpec norm_from_json(const json& j);
NormSpec load_norm(const std::string& path);

/// {"k", "kind": {"type": "norm_sphere", "reference", "radius"} |
/// {"type": "off_center", "center"}, "seed", "count", "points"}.
json domain_to_json(const SampleDomain& domain);
SampleDomain domain_from_json(const json& j);

json quotient_to_json(const QuotientFunction& f);
QuotientFunction quotient_from_json(const json& j);

json psi_to_json(const PsiPoint& p);
PsiPoint psi_from_json(const json& j);

json estimate_to_json(const NormDistanceEstimate& e);
json schoenberg_to_json(const SchoenbergReport& r);
json embedding_to_json(const EmbeddingReport& r);

/// One row per point, comma separated, shortest round-trip formatting.
std::string rows_to_csv(const std::vector<std::vector<double>>& rows);

}  // namespace normspace::io
