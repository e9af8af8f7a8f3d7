#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "normspace/linalg.hpp"
#include "normspace/metric.hpp"

namespace normspace {

/// Point j -> (d(x_i, x_j))_{i != base}, in increasing i. The images are
/// isometric under the sup norm.
std::vector<std::vector<double>> frechet_embed(const FiniteMetric& r, std::size_t base = 0);

/// max_i |a_i - b_i|.
double chebyshev_distance(std::span<const double> a, std::span<const double> b);

/// (v_1, ..., v_p, 0, ..., 0) in R^q, q > p >= 1; read modulo constants.
std::vector<double> pad_to_quotient(std::span<const double> v, std::size_t q);

/// Diameter-norm distance of two vectors modulo constants: diam(a - b).
double padded_distance(std::span<const double> a, std::span<const double> b);

/// Log-distances of a metric on n points, indexed by lexicographic pairs.
struct PsiPoint {
  std::size_t n = 0;
  std::vector<double> psi;
  friend bool operator==(const PsiPoint&, const PsiPoint&) = default;
};

inline constexpr double kMembershipTol = 1e-12;

/// First triple (i, j, k) with exp(psi_ij) + exp(psi_jk) < exp(psi_ik) - 1e-12,
/// over all three orientations of every triple; nullopt for a member.
std::optional<std::array<std::size_t, 3>> membership_violation(const PsiPoint& point);
bool is_member(const PsiPoint& point);

PsiPoint metric_to_psi(const FiniteMetric& r);
/// Throws MembershipViolation with the offending triple.
FiniteMetric psi_to_metric(const PsiPoint& point);

struct PairComparison {
  std::size_t a = 0;
  std::size_t b = 0;
  double source = 0.0;  // rescaled distance in X
  double image = 0.0;   // quotient distance between the image metrics
  double ratio = 0.0;   // image / source
};

struct EmbeddingReport {
  std::size_t n = 0;
  double scale = 1.0;  // factor applied to X so that its diameter is log 2
  std::vector<PsiPoint> psi_images;
  std::vector<FiniteMetric> images;
  std::vector<PairComparison> pair_table;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  bool membership_ok = false;
  bool isometric = false;  // every ratio within 1e-12 of 1
};

/// Rescales X to diameter log 2, Frechet-embeds it into R^{m-1}, pads into
/// R^{n(n-1)/2} and exponentiates each image into a metric on n points.
/// Distances are distorted by a factor in [1, 2], not preserved exactly.
/// Needs 2 <= m <= n(n-1)/2 and n >= 3.
EmbeddingReport embed_into_Sn(const FiniteMetric& x, std::size_t n);

/// Whether the padded Frechet images of X (no rescaling) are all members,
/// with `base` as the omitted coordinate.
bool frechet_image_membership(const FiniteMetric& x, std::size_t n, std::size_t base = 0);

/// (d(b, j)^2 + d(b, k)^2 - d(j, k)^2) over j, k != base, in increasing order.
Matrix schoenberg_matrix(const FiniteMetric& r, std::size_t base = 0);

struct SchoenbergReport {
  std::size_t base = 0;
  Matrix matrix;
  std::vector<double> eigenvalues;  // descending
  double threshold = 0.0;           // tol * max |eigenvalue|
  bool embeddable = false;
  std::size_t rank = 0;
  std::vector<std::vector<double>> coords;  // one row per point, base at the origin
  double residual = 0.0;                    // max | ||c_i - c_j||_2 - d(i, j) |
  std::optional<std::vector<double>> negative_witness;  // eigenvector of the most negative eigenvalue
};

/// Euclidean embeddability by the sign pattern of the Schoenberg matrix.
/// The matrix equals twice the Gram matrix of the points relative to the
/// base, so coordinates are V sqrt(lambda / 2) over the eigenvalues above
/// the threshold.
SchoenbergReport euclidean_embed(const FiniteMetric& r, std::size_t base = 0, double tol = 1e-9);

}  // namespace normspace
