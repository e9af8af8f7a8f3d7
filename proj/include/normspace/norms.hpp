#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "normspace/linalg.hpp"

namespace normspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct NormNode;

/// Immutable description of a norm on R^k, built from p-norms by the
/// operations that preserve normhood (positive scaling, sums, precomposition
/// with an invertible matrix) plus three concrete families. Copies share
/// the underlying tree.
///
/// Every factory validates its parameters and throws ParameterOutOfRange,
/// SingularMatrix or DimensionMismatch, so a constructed NormSpec is always
/// a norm on every dimension it accepts.
class NormSpec {
 public:
  /// ||x||_p, p in [1, inf].
  static NormSpec pnorm(double p);
  /// sum_i w_i |<a_i, x>|; weights positive, functionals spanning R^k.
  static NormSpec weighted_abs(std::vector<double> weights, std::vector<std::vector<double>> functionals);
  /// ||x||_p + q |x_axis|, q >= 0.
  static NormSpec perturbed(double p, double q, std::size_t axis);
  /// sum_i mass_i ||x||_{p_i}, p_i in [1, inf), mass_i > 0, at least one atom.
  static NormSpec mixture(std::vector<double> exponents, std::vector<double> masses);
  /// x -> inner(A x), A square and invertible.
  static NormSpec precomposed(Matrix a, NormSpec inner);
  /// c * inner, c > 0.
  static NormSpec scaled(double c, NormSpec inner);
  static NormSpec sum(NormSpec left, NormSpec right);

  const NormNode& node() const noexcept { return *node_; }

  /// Dimension fixed by the description (matrix or functional sizes), if any.
  std::optional<std::size_t> fixed_dimension() const;
  /// Smallest admissible dimension (perturbation axes need axis < k).
  std::size_t min_dimension() const;
  bool accepts_dimension(std::size_t k) const;

  /// Throws DimensionMismatch when x.size() is not admissible.
  double operator()(std::span<const double> x) const;
  /// Same, without the dimension check.
  double evaluate_unchecked(std::span<const double> x) const;

  std::string describe() const;

 private:
  explicit NormSpec(std::shared_ptr<const NormNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const NormNode> node_;
};

struct PNorm {
  double p;
};
struct WeightedAbs {
  std::vector<double> weights;
  std::vector<std::vector<double>> functionals;
};
struct Perturbed {
  double p;
  double q;
  std::size_t axis;
};
struct Mixture {
  std::vector<double> exponents;
  std::vector<double> masses;
};
struct Precomposed {
  Matrix matrix;
  NormSpec inner;
};
struct Scaled {
  double factor;
  NormSpec inner;
};
struct Sum {
  NormSpec left;
  NormSpec right;
};

struct NormNode {
  std::variant<PNorm, WeightedAbs, Perturbed, Mixture, Precomposed, Scaled, Sum> value;
};

/// ||x||_p for p in [1, inf], computed with a max-abs rescale so that
/// huge or tiny inputs neither overflow nor underflow.
double pnorm_value(std::span<const double> x, double p);

/// Free-function spelling of NormSpec::operator().
inline double eval(const NormSpec& spec, std::span<const double> x) { return spec(x); }

/// Removes outer Scaled wrappers; the dilation class is unchanged.
const NormSpec& strip_scale(const NormSpec& spec);

struct AxiomWitness {
  std::string axiom;  // "positivity", "homogeneity" or "subadditivity"
  std::vector<double> x;
  std::vector<double> y;  // second argument for sub-additivity
  double scalar = 0.0;    // scalar for homogeneity
  double lhs = 0.0;
  double rhs = 0.0;
};

struct NormAxiomReport {
  std::size_t trials = 0;
  std::vector<AxiomWitness> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Randomised positivity, positive homogeneity and sub-additivity check in
/// dimension k. Homogeneity is compared to relative tolerance 1e-10.
NormAxiomReport check_norm_axioms(const NormSpec& spec, std::size_t k, std::size_t trials, std::uint64_t seed);

/// Exact quotient distance for the pairs where it is known, else nullopt:
///   p-norms:                       |1/p - 1/q| log k
///   ||.||_p + q|x_j| vs the same p: |log(1+q') - log(1+q)| (same axis), log(1+q) + log(1+q') (different axes), k >= 2
///   mixture vs ||.||_q, all atoms < q: log(sum m_i k^{1/p_i}) - log(k^{1/q} sum m_i)
/// Outer scalings are ignored and 1/inf = 0 throughout.
std::optional<double> distance_closed_form(const NormSpec& a, const NormSpec& b, std::size_t k);

/// The signed permutation matrix x -> (signs[i] * x[perm[i]])_i.
Matrix signed_permutation(std::span<const std::size_t> perm, std::span<const int> signs);

}  // namespace normspace
