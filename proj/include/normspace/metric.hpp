#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "normspace/random.hpp"

namespace normspace {

/// Relative tolerance shared by the triangle and proportionality checks.
inline constexpr double kMetricRelTol = 1e-12;

/// Number of unordered pairs of an n-point set.
constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Lexicographic index of the pair {i, j}, i != j: (0,1), (0,2), ..., (1,2), ...
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> pair_at(std::size_t n, std::size_t index);

/// Positive, symmetric distances on the points 0..n-1 satisfying the
/// triangle inequality. Distances are stored once per unordered pair in
/// lexicographic order, so symmetry holds by construction.
class FiniteMetric {
 public:
  /// Validates positivity, finiteness and the triangle inequality.
  static FiniteMetric from_pairs(std::size_t n, std::vector<double> pair_values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const;
  std::span<const double> pair_values() const noexcept { return d_; }

  double diameter() const;
  double min_distance() const;
  /// alpha * d, alpha > 0.
  FiniteMetric scaled(double alpha) const;
  std::vector<std::vector<double>> to_table() const;

  friend bool operator==(const FiniteMetric&, const FiniteMetric&) = default;

 private:
  FiniteMetric(std::size_t n, std::vector<double> d) : n_(n), d_(std::move(d)) {}

  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Accepts a full n x n table with zero diagonal. Errors name the first
/// offending pair or triple.
FiniteMetric validate_metric(const std::vector<std::vector<double>>& table);

/// Dilation class of a metric, represented by the member whose smallest
/// distance is exactly 1.
class MetricClass {
 public:
  explicit MetricClass(const FiniteMetric& member);
  const FiniteMetric& representative() const noexcept { return rep_; }
  friend bool operator==(const MetricClass&, const MetricClass&) = default;

 private:
  FiniteMetric rep_;
};

/// log max(r2/r1) - log min(r2/r1) over all pairs.
double log_distortion(const FiniteMetric& r1, const FiniteMetric& r2);

/// alpha with r2 = alpha * r1 pairwise, to relative tolerance 1e-12.
std::optional<double> are_proportional(const FiniteMetric& r1, const FiniteMetric& r2);

inline constexpr std::size_t kMaxIsometrySearch = 9;

/// Permutation sigma with r2(sigma(i), sigma(j)) == r1(i, j) for all pairs
/// (relative tolerance 1e-12), found by exhaustive search. n <= 9.
std::optional<std::vector<std::size_t>> brute_force_isometry(const FiniteMetric& r1, const FiniteMetric& r2);

/// Adds point n at distance diam(r) from every existing point.
FiniteMetric apex_extend(const FiniteMetric& r);

// Special families -----------------------------------------------------------

/// All off-diagonal distances 1.
FiniteMetric discrete_metric(std::size_t n);
/// Discrete metric with the pair of lexicographic index `edge` set to a; a in (0, 2], n >= 3.
FiniteMetric rho_metric(std::size_t n, std::size_t edge, double a);
/// Points {1, ..., n-1, n+m+1} of the real line, labelled in order; n >= 3, m >= 1.
FiniteMetric line_witness(std::size_t n, std::size_t m);
/// Two metrics equal to 1 off the diagonal except one halved edge each:
/// rho(first) = 1/2 and rho'(second) = 1/2. The edges must differ.
std::pair<FiniteMetric, FiniteMetric> gh_pair(std::size_t n, std::pair<std::size_t, std::size_t> first,
                                              std::pair<std::size_t, std::size_t> second);

struct Discrete {
  std::size_t n;
};
struct RhoFamily {
  std::size_t n;
  std::size_t edge;
  double a;
};
struct LineWitness {
  std::size_t n;
  std::size_t m;
};
struct GHPair {
  std::size_t n;
  std::pair<std::size_t, std::size_t> first;
  std::pair<std::size_t, std::size_t> second;
};
using SpecialMetric = std::variant<Discrete, RhoFamily, LineWitness, GHPair>;

/// One metric, or two for GHPair.
std::vector<FiniteMetric> make_special(const SpecialMetric& kind);

/// Distance in the quotient between rho_{edge,a} and rho_{other_edge,other_a}.
double rho_distance_closed_form(std::size_t edge, double a, std::size_t other_edge, double other_a);

/// Size of a greedy first-fit subset whose members are pairwise at
/// distance >= r; a lower bound on the r-packing number.
template <class Point, class Distance>
std::size_t packing_count(std::span<const Point> points, Distance&& dist, double r) {
  std::vector<const Point*> kept;
  for (const Point& p : points) {
    bool separated = true;
    for (const Point* q : kept) {
      if (dist(p, *q) < r) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(&p);
  }
  return kept.size();
}

/// Random metric for property tests. A coin flip picks either distances
/// drawn uniformly from [1, 2] (always a metric) or Euclidean distances of
/// Gaussian points in R^3.
FiniteMetric random_metric(std::size_t n, Rng& rng);

}  // namespace normspace
