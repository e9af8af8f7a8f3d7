#include "normspace/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "normspace/diamnorm.hpp"
#include "normspace/error.hpp"

namespace normspace {

namespace {

void require_base(const FiniteMetric& r, std::size_t base) {
  if (base >= r.size()) throw Error(ErrorCode::BadBaseIndex, "base index " + std::to_string(base) + " out of range");
}

std::vector<PsiPoint> padded_frechet_images(const FiniteMetric& x, std::size_t n, std::size_t base) {
  const std::size_t target = pair_count(n);
  std::vector<PsiPoint> out;
  for (const auto& v : frechet_embed(x, base)) out.push_back({n, pad_to_quotient(v, target)});
  return out;
}

void require_pipeline_sizes(const FiniteMetric& x, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "target needs n >= 3");
  if (x.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least two points");
  if (x.size() > pair_count(n))
    throw Error(ErrorCode::TooManyPoints,
                std::to_string(x.size()) + " points exceed n(n-1)/2 = " + std::to_string(pair_count(n)));
}

}  // namespace

std::vector<std::vector<double>> frechet_embed(const FiniteMetric& r, std::size_t base) {
  require_base(r, base);
  std::vector<std::vector<double>> out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    out[j].reserve(r.size() - 1);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (i != base) out[j].push_back(r(i, j));
  }
  return out;
}

double chebyshev_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

std::vector<double> pad_to_quotient(std::span<const double> v, std::size_t q) {
  if (v.empty() || q <= v.size())
    throw Error(ErrorCode::BadDimensions, "padding needs q > p >= 1, got p = " + std::to_string(v.size()) +
                                              ", q = " + std::to_string(q));
  std::vector<double> out(q, 0.0);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

double padded_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return diameter(diff);
}

std::optional<std::array<std::size_t, 3>> membership_violation(const PsiPoint& point) {
  const std::size_t n = point.n;
  if (n < 2 || point.psi.size() != pair_count(n))
    throw Error(ErrorCode::BadDimensions, "psi vector needs n(n-1)/2 entries");
  std::vector<double> e(point.psi.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(point.psi[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (e[pair_index(n, i, j)] + e[pair_index(n, j, k)] < e[pair_index(n, i, k)] - kMembershipTol)
          return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

bool is_member(const PsiPoint& point) { return !membership_violation(point).has_value(); }

PsiPoint metric_to_psi(const FiniteMetric& r) {
  PsiPoint p{r.size(), {}};
  p.psi.reserve(r.pair_values().size());
  for (double d : r.pair_values()) p.psi.push_back(std::log(d));
  return p;
}

FiniteMetric psi_to_metric(const PsiPoint& point) {
  if (auto bad = membership_violation(point)) {
    const auto [i, j, k] = *bad;
    throw Error(ErrorCode::MembershipViolation,
                "exp(psi) breaks the triangle inequality at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ")",
                {i, j, k});
  }
  std::vector<double> d(point.psi.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::exp(point.psi[i]);
  return FiniteMetric::from_pairs(point.n, std::move(d));
}

EmbeddingReport embed_into_Sn(const FiniteMetric& x, std::size_t n) {
  require_pipeline_sizes(x, n);
  EmbeddingReport report;
  report.n = n;
  report.scale = std::numbers::ln2 / x.diameter();
  const FiniteMetric rescaled = x.scaled(report.scale);
  report.psi_images = padded_frechet_images(rescaled, n, 0);
  report.membership_ok = std::all_of(report.psi_images.begin(), report.psi_images.end(), is_member);
  if (report.membership_ok)
    for (const auto& p : report.psi_images) report.images.push_back(psi_to_metric(p));

  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      PairComparison row{a, b, rescaled(a, b), 0.0, 0.0};
      row.image = report.membership_ok ? log_distortion(report.images[a], report.images[b])
                                       : padded_distance(report.psi_images[a].psi, report.psi_images[b].psi);
      row.ratio = row.image / row.source;
      report.min_ratio = std::min(report.min_ratio, row.ratio);
      report.max_ratio = std::max(report.max_ratio, row.ratio);
      report.pair_table.push_back(row);
    }
  }
  report.isometric = std::abs(report.min_ratio - 1.0) <= 1e-12 && std::abs(report.max_ratio - 1.0) <= 1e-12;
  return report;
}

bool frechet_image_membership(const FiniteMetric& x, std::size_t n, std::size_t base) {
  require_pipeline_sizes(x, n);
  const auto images = padded_frechet_images(x, n, base);
  return std::all_of(images.begin(), images.end(), is_member);
}

Matrix schoenberg_matrix(const FiniteMetric& r, std::size_t base) {
  require_base(r, base);
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (i != base) others.push_back(i);
  Matrix a(others.size(), others.size());
  for (std::size_t j = 0; j < others.size(); ++j) {
    for (std::size_t k = 0; k < others.size(); ++k) {
      const double dj = r(base, others[j]);
      const double dk = r(base, others[k]);
      const double djk = r(others[j], others[k]);
      a(j, k) = dj * dj + dk * dk - djk * djk;
    }
  }
  return a;
}

SchoenbergReport euclidean_embed(const FiniteMetric& r, std::size_t base, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "tolerance must be positive");
  SchoenbergReport report;
  report.base = base;
  report.matrix = schoenberg_matrix(r, base);
  const auto eig = jacobi_eigen(report.matrix);
  report.eigenvalues = eig.values;

  double largest = 0.0;
  for (double v : eig.values) largest = std::max(largest, std::abs(v));
  report.threshold = tol * largest;
  report.embeddable = eig.values.back() >= -report.threshold;
  report.rank = static_cast<std::size_t>(
      std::count_if(eig.values.begin(), eig.values.end(), [&](double v) { return v > report.threshold; }));
  if (!report.embeddable) report.negative_witness = eig.vectors.column(eig.values.size() - 1);

  // Rows of V * sqrt(Lambda / 2) for the retained eigenvalues.
  std::vector<std::vector<double>> rel(report.matrix.rows(), std::vector<double>(report.rank, 0.0));
  for (std::size_t c = 0; c < report.rank; ++c) {
    const double s = std::sqrt(eig.values[c] / 2.0);
    for (std::size_t i = 0; i < rel.size(); ++i) rel[i][c] = eig.vectors(i, c) * s;
  }
  report.coords.assign(r.size(), std::vector<double>(report.rank, 0.0));
  for (std::size_t i = 0, j = 0; i < r.size(); ++i)
    if (i != base) report.coords[i] = rel[j++];

  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < report.rank; ++c)
        s += (report.coords[i][c] - report.coords[j][c]) * (report.coords[i][c] - report.coords[j][c]);
      report.residual = std::max(report.residual, std::abs(std::sqrt(s) - r(i, j)));
    }
  }
  return report;
}

}  // namespace normspace
