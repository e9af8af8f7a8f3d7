#include "normspace/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "normspace/error.hpp"

namespace normspace {

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kMetricRelTol * std::max(std::abs(a), std::abs(b));
}

std::string triple_text(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

void check_pairs(std::size_t n, std::span<const double> d) {
  for (std::size_t idx = 0; idx < d.size(); ++idx) {
    const auto [i, j] = pair_at(n, idx);
    if (!std::isfinite(d[idx]))
      throw Error(ErrorCode::NonFinite, "distance " + std::to_string(i) + "-" + std::to_string(j) + " is not finite",
                  {i, j});
    if (d[idx] <= 0.0)
      throw Error(ErrorCode::NonPositiveOffDiagonal,
                  "distance " + std::to_string(i) + "-" + std::to_string(j) + " is not positive", {i, j});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double dik = d[pair_index(n, i, k)];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = d[pair_index(n, i, j)] + d[pair_index(n, j, k)];
        if (dik > via * (1.0 + kMetricRelTol))
          throw Error(ErrorCode::TriangleViolation,
                      "d(i,k) > d(i,j) + d(j,k) at (i,j,k) = " + triple_text(i, j, k), {i, j, k});
      }
    }
  }
}

}  // namespace

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i == j || i >= n || j >= n) throw Error(ErrorCode::ParameterOutOfRange, "invalid pair");
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pair_at(std::size_t n, std::size_t index) {
  if (index >= pair_count(n)) throw Error(ErrorCode::ParameterOutOfRange, "pair index out of range");
  std::size_t i = 0;
  while (index >= n - i - 1) {
    index -= n - i - 1;
    ++i;
  }
  return {i, i + 1 + index};
}

FiniteMetric FiniteMetric::from_pairs(std::size_t n, std::vector<double> pair_values) {
  if (n < 2) throw Error(ErrorCode::BadDimensions, "a metric needs at least 2 points");
  if (pair_values.size() != pair_count(n))
    throw Error(ErrorCode::BadDimensions, "expected " + std::to_string(pair_count(n)) + " pair distances");
  check_pairs(n, pair_values);
  return FiniteMetric(n, std::move(pair_values));
}

double FiniteMetric::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return d_[pair_index(n_, i, j)];
}

double FiniteMetric::diameter() const { return *std::max_element(d_.begin(), d_.end()); }

double FiniteMetric::min_distance() const { return *std::min_element(d_.begin(), d_.end()); }

FiniteMetric FiniteMetric::scaled(double alpha) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::ParameterOutOfRange, "scale must be positive");
  std::vector<double> d = d_;
  for (auto& v : d) v *= alpha;
  return FiniteMetric(n_, std::move(d));
}

std::vector<std::vector<double>> FiniteMetric::to_table() const {
  std::vector<std::vector<double>> t(n_, std::vector<double>(n_, 0.0));
  for (std::size_t idx = 0; idx < d_.size(); ++idx) {
    const auto [i, j] = pair_at(n_, idx);
    t[i][j] = t[j][i] = d_[idx];
  }
  return t;
}

FiniteMetric validate_metric(const std::vector<std::vector<double>>& table) {
  const std::size_t n = table.size();
  for (const auto& row : table)
    if (row.size() != n) throw Error(ErrorCode::NotSquare, "distance table is not square");
  if (n < 2) throw Error(ErrorCode::BadDimensions, "a metric needs at least 2 points");
  for (std::size_t i = 0; i < n; ++i)
    if (table[i][i] != 0.0)
      throw Error(ErrorCode::NonZeroDiagonal, "diagonal entry " + std::to_string(i) + " is not zero", {i, i});
  std::vector<double> d;
  d.reserve(pair_count(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = table[i][j];
      const double b = table[j][i];
      if (std::isfinite(a) && std::isfinite(b) && !nearly_equal(a, b))
        throw Error(ErrorCode::NonSymmetric,
                    "entries (" + std::to_string(i) + "," + std::to_string(j) + ") and (" + std::to_string(j) + "," +
                        std::to_string(i) + ") differ",
                    {i, j});
      d.push_back(a);
    }
  }
  return FiniteMetric::from_pairs(n, std::move(d));
}

MetricClass::MetricClass(const FiniteMetric& member) : rep_(member.scaled(1.0 / member.min_distance())) {}

namespace {

void require_same_size(const FiniteMetric& r1, const FiniteMetric& r2) {
  if (r1.size() != r2.size())
    throw Error(ErrorCode::DimensionMismatch,
                "metrics on " + std::to_string(r1.size()) + " and " + std::to_string(r2.size()) + " points");
}

}  // namespace

double log_distortion(const FiniteMetric& r1, const FiniteMetric& r2) {
  require_same_size(r1, r2);
  const auto a = r1.pair_values();
  const auto b = r2.pair_values();
  double hi = b[0] / a[0];
  double lo = hi;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double ratio = b[i] / a[i];
    hi = std::max(hi, ratio);
    lo = std::min(lo, ratio);
  }
  return std::log(hi) - std::log(lo);
}

std::optional<double> are_proportional(const FiniteMetric& r1, const FiniteMetric& r2) {
  require_same_size(r1, r2);
  const auto a = r1.pair_values();
  const auto b = r2.pair_values();
  const double alpha = b[0] / a[0];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!nearly_equal(alpha * a[i], b[i])) return std::nullopt;
  return alpha;
}

std::optional<std::vector<std::size_t>> brute_force_isometry(const FiniteMetric& r1, const FiniteMetric& r2) {
  require_same_size(r1, r2);
  const std::size_t n = r1.size();
  if (n > kMaxIsometrySearch)
    throw Error(ErrorCode::TooLarge, "isometry search is limited to " + std::to_string(kMaxIsometrySearch) + " points");

  // Distance multisets must agree before any search.
  std::vector<double> s1(r1.pair_values().begin(), r1.pair_values().end());
  std::vector<double> s2(r2.pair_values().begin(), r2.pair_values().end());
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (!nearly_equal(s1[i], s2[i])) return std::nullopt;

  std::vector<std::size_t> sigma(n);
  std::vector<bool> used(n, false);
  // Depth-first assignment of sigma(0), sigma(1), ...; each new image is
  // checked against every earlier one.
  auto extend = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    for (std::size_t target = 0; target < n; ++target) {
      if (used[target]) continue;
      bool consistent = true;
      for (std::size_t prev = 0; prev < depth && consistent; ++prev)
        consistent = nearly_equal(r1(prev, depth), r2(sigma[prev], target));
      if (!consistent) continue;
      sigma[depth] = target;
      used[target] = true;
      if (self(self, depth + 1)) return true;
      used[target] = false;
    }
    return false;
  };
  if (extend(extend, 0)) return sigma;
  return std::nullopt;
}

FiniteMetric apex_extend(const FiniteMetric& r) {
  const std::size_t n = r.size();
  const double diam = r.diameter();
  std::vector<double> d;
  d.reserve(pair_count(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d.push_back(r(i, j));
    d.push_back(diam);
  }
  return FiniteMetric::from_pairs(n + 1, std::move(d));
}

FiniteMetric discrete_metric(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::ParameterOutOfRange, "discrete metric needs n >= 2");
  return FiniteMetric::from_pairs(n, std::vector<double>(pair_count(n), 1.0));
}

FiniteMetric rho_metric(std::size_t n, std::size_t edge, double a) {
  if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "rho family needs n >= 3");
  if (!(a > 0.0 && a <= 2.0)) throw Error(ErrorCode::ParameterOutOfRange, "rho family needs a in (0, 2]");
  if (edge >= pair_count(n)) throw Error(ErrorCode::ParameterOutOfRange, "edge index out of range");
  std::vector<double> d(pair_count(n), 1.0);
  d[edge] = a;
  return FiniteMetric::from_pairs(n, std::move(d));
}

FiniteMetric line_witness(std::size_t n, std::size_t m) {
  if (n < 3 || m < 1) throw Error(ErrorCode::ParameterOutOfRange, "line witness needs n >= 3 and m >= 1");
  std::vector<double> coords;
  for (std::size_t i = 1; i <= n - 1; ++i) coords.push_back(static_cast<double>(i));
  coords.push_back(static_cast<double>(n + m + 1));
  std::vector<double> d;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.push_back(coords[j] - coords[i]);
  return FiniteMetric::from_pairs(n, std::move(d));
}

std::pair<FiniteMetric, FiniteMetric> gh_pair(std::size_t n, std::pair<std::size_t, std::size_t> first,
                                              std::pair<std::size_t, std::size_t> second) {
  if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "GH pair needs n >= 3");
  const std::size_t e1 = pair_index(n, first.first, first.second);
  const std::size_t e2 = pair_index(n, second.first, second.second);
  if (e1 == e2) throw Error(ErrorCode::ParameterOutOfRange, "GH pair needs two distinct edges");
  std::vector<double> d1(pair_count(n), 1.0);
  std::vector<double> d2 = d1;
  d1[e1] = 0.5;
  d2[e2] = 0.5;
  return {FiniteMetric::from_pairs(n, std::move(d1)), FiniteMetric::from_pairs(n, std::move(d2))};
}

std::vector<FiniteMetric> make_special(const SpecialMetric& kind) {
  struct Visitor {
    std::vector<FiniteMetric> operator()(const Discrete& k) const { return {discrete_metric(k.n)}; }
    std::vector<FiniteMetric> operator()(const RhoFamily& k) const { return {rho_metric(k.n, k.edge, k.a)}; }
    std::vector<FiniteMetric> operator()(const LineWitness& k) const { return {line_witness(k.n, k.m)}; }
    std::vector<FiniteMetric> operator()(const GHPair& k) const {
      auto [a, b] = gh_pair(k.n, k.first, k.second);
      return {std::move(a), std::move(b)};
    }
  };
  return std::visit(Visitor{}, kind);
}

double rho_distance_closed_form(std::size_t edge, double a, std::size_t other_edge, double other_a) {
  if (!(a > 0.0 && a <= 2.0) || !(other_a > 0.0 && other_a <= 2.0))
    throw Error(ErrorCode::ParameterOutOfRange, "rho family needs a in (0, 2]");
  const double la = std::log(a);
  const double lb = std::log(other_a);
  if (edge == other_edge) return std::abs(la - lb);
  if ((a - 1.0) * (other_a - 1.0) >= 0.0) return std::abs(la) + std::abs(lb);
  return std::max(std::abs(la), std::abs(lb));
}

FiniteMetric random_metric(std::size_t n, Rng& rng) {
  std::vector<double> d(pair_count(n));
  if (rng.uniform() < 0.5) {
    for (auto& v : d) v = rng.uniform(1.0, 2.0);
  } else {
    std::vector<std::vector<double>> pts(n);
    for (auto& p : pts) p = rng.gaussian_vector(3);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
      const auto [i, j] = pair_at(n, idx);
      double s = 0.0;
      for (std::size_t c = 0; c < 3; ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
      d[idx] = std::sqrt(s);
    }
  }
  return FiniteMetric::from_pairs(n, std::move(d));
}

}  // namespace normspace
