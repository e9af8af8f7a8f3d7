#include "normspace/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normspace/error.hpp"
#include "normspace/random.hpp"

namespace normspace {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_exponent(double p, bool allow_inf) {
  const bool ok = allow_inf ? (p >= 1.0) : (p >= 1.0 && std::isfinite(p));
  if (!ok || std::isnan(p))
    throw Error(ErrorCode::ParameterOutOfRange,
                "exponent p must lie in [1, " + std::string(allow_inf ? "inf]" : "inf)") + ", got " + std::to_string(p));
}

double inverse_exponent(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace

double pnorm_value(std::span<const double> x, double p) {
  double largest = 0.0;
  for (double v : x) largest = std::max(largest, std::abs(v));
  if (std::isinf(p) || largest == 0.0) return largest;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (double v : x) s += (v / largest) * (v / largest);
    return largest * std::sqrt(s);
  }
  for (double v : x) s += std::pow(std::abs(v) / largest, p);
  return largest * std::pow(s, 1.0 / p);
}

NormSpec NormSpec::pnorm(double p) {
  require_exponent(p, true);
  return NormSpec(std::make_shared<const NormNode>(NormNode{PNorm{p}}));
}

NormSpec NormSpec::weighted_abs(std::vector<double> weights, std::vector<std::vector<double>> functionals) {
  if (weights.empty() || weights.size() != functionals.size())
    throw Error(ErrorCode::ParameterOutOfRange, "weighted_abs needs one positive weight per functional");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::ParameterOutOfRange, "weights must be positive");
  const Matrix rows = Matrix::from_rows(functionals);
  if (rows.cols() == 0) throw Error(ErrorCode::BadDimensions, "functionals must be nonempty vectors");
  if (numerical_rank(rows) != rows.cols())
    throw Error(ErrorCode::ParameterOutOfRange, "functionals do not span R^" + std::to_string(rows.cols()));
  return NormSpec(
      std::make_shared<const NormNode>(NormNode{WeightedAbs{std::move(weights), std::move(functionals)}}));
}

NormSpec NormSpec::perturbed(double p, double q, std::size_t axis) {
  require_exponent(p, true);
  if (!(q >= 0.0) || !std::isfinite(q)) throw Error(ErrorCode::ParameterOutOfRange, "perturbation q must be >= 0");
  return NormSpec(std::make_shared<const NormNode>(NormNode{Perturbed{p, q, axis}}));
}

NormSpec NormSpec::mixture(std::vector<double> exponents, std::vector<double> masses) {
  if (exponents.empty() || exponents.size() != masses.size())
    throw Error(ErrorCode::ParameterOutOfRange, "mixture needs one positive mass per atom");
  for (double p : exponents) require_exponent(p, false);
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m)) throw Error(ErrorCode::ParameterOutOfRange, "mixture masses must be positive");
  return NormSpec(std::make_shared<const NormNode>(NormNode{Mixture{std::move(exponents), std::move(masses)}}));
}

NormSpec NormSpec::precomposed(Matrix a, NormSpec inner) {
  if (!a.square() || a.rows() == 0) throw Error(ErrorCode::BadDimensions, "precomposition needs a square matrix");
  if (!inner.accepts_dimension(a.rows()))
    throw Error(ErrorCode::DimensionMismatch, "matrix size does not fit the inner norm");
  if (!is_invertible(a)) throw Error(ErrorCode::SingularMatrix, "precomposition matrix has a nontrivial kernel");
  return NormSpec(std::make_shared<const NormNode>(NormNode{Precomposed{std::move(a), std::move(inner)}}));
}

NormSpec NormSpec::scaled(double c, NormSpec inner) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::ParameterOutOfRange, "scale factor must be positive");
  return NormSpec(std::make_shared<const NormNode>(NormNode{Scaled{c, std::move(inner)}}));
}

NormSpec NormSpec::sum(NormSpec left, NormSpec right) {
  const auto l = left.fixed_dimension();
  const auto r = right.fixed_dimension();
  if (l && r && *l != *r) throw Error(ErrorCode::DimensionMismatch, "summands have different dimensions");
  if (l && !right.accepts_dimension(*l)) throw Error(ErrorCode::DimensionMismatch, "summands are incompatible");
  if (r && !left.accepts_dimension(*r)) throw Error(ErrorCode::DimensionMismatch, "summands are incompatible");
  return NormSpec(std::make_shared<const NormNode>(NormNode{Sum{std::move(left), std::move(right)}}));
}

std::optional<std::size_t> NormSpec::fixed_dimension() const {
  return std::visit(Overloaded{
                        [](const PNorm&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const Perturbed&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const Mixture&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const WeightedAbs& w) -> std::optional<std::size_t> { return w.functionals.front().size(); },
                        [](const Precomposed& c) -> std::optional<std::size_t> { return c.matrix.rows(); },
                        [](const Scaled& s) { return s.inner.fixed_dimension(); },
                        [](const Sum& s) {
                          auto l = s.left.fixed_dimension();
                          return l ? l : s.right.fixed_dimension();
                        },
                    },
                    node_->value);
}

std::size_t NormSpec::min_dimension() const {
  return std::visit(Overloaded{
                        [](const PNorm&) -> std::size_t { return 1; },
                        [](const Mixture&) -> std::size_t { return 1; },
                        [](const Perturbed& p) -> std::size_t { return p.axis + 1; },
                        [](const WeightedAbs& w) -> std::size_t { return w.functionals.front().size(); },
                        [](const Precomposed& c) -> std::size_t { return c.matrix.rows(); },
                        [](const Scaled& s) { return s.inner.min_dimension(); },
                        [](const Sum& s) { return std::max(s.left.min_dimension(), s.right.min_dimension()); },
                    },
                    node_->value);
}

bool NormSpec::accepts_dimension(std::size_t k) const {
  if (k == 0) return false;
  if (auto fixed = fixed_dimension()) return *fixed == k;
  return k >= min_dimension();
}

double NormSpec::operator()(std::span<const double> x) const {
  if (!accepts_dimension(x.size()))
    throw Error(ErrorCode::DimensionMismatch,
                describe() + " cannot be evaluated on R^" + std::to_string(x.size()));
  return evaluate_unchecked(x);
}

double NormSpec::evaluate_unchecked(std::span<const double> x) const {
  return std::visit(Overloaded{
                        [&](const PNorm& n) { return pnorm_value(x, n.p); },
                        [&](const Perturbed& n) { return pnorm_value(x, n.p) + n.q * std::abs(x[n.axis]); },
                        [&](const Mixture& n) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < n.exponents.size(); ++i)
                            s += n.masses[i] * pnorm_value(x, n.exponents[i]);
                          return s;
                        },
                        [&](const WeightedAbs& n) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < n.weights.size(); ++i) {
                            double dot = 0.0;
                            for (std::size_t c = 0; c < x.size(); ++c) dot += n.functionals[i][c] * x[c];
                            s += n.weights[i] * std::abs(dot);
                          }
                          return s;
                        },
                        [&](const Precomposed& n) {
                          const auto y = multiply(n.matrix, x);
                          return n.inner.evaluate_unchecked(y);
                        },
                        [&](const Scaled& n) { return n.factor * n.inner.evaluate_unchecked(x); },
                        [&](const Sum& n) { return n.left.evaluate_unchecked(x) + n.right.evaluate_unchecked(x); },
                    },
                    node_->value);
}

std::string NormSpec::describe() const {
  auto exponent = [](double p) {
    if (std::isinf(p)) return std::string("inf");
    std::ostringstream os;
    os << p;
    return os.str();
  };
  return std::visit(Overloaded{
                        [&](const PNorm& n) { return "pnorm(" + exponent(n.p) + ")"; },
                        [&](const Perturbed& n) {
                          std::ostringstream os;
                          os << "perturbed(p=" << exponent(n.p) << ", q=" << n.q << ", axis=" << n.axis << ")";
                          return os.str();
                        },
                        [&](const Mixture& n) { return "mixture(" + std::to_string(n.exponents.size()) + " atoms)"; },
                        [&](const WeightedAbs& n) {
                          return "weighted_abs(" + std::to_string(n.weights.size()) + " terms)";
                        },
                        [&](const Precomposed& n) { return "precomposed(" + n.inner.describe() + ")"; },
                        [&](const Scaled& n) {
                          std::ostringstream os;
                          os << "scaled(" << n.factor << ", " << n.inner.describe() << ")";
                          return os.str();
                        },
                        [&](const Sum& n) { return "sum(" + n.left.describe() + ", " + n.right.describe() + ")"; },
                    },
                    node_->value);
}

const NormSpec& strip_scale(const NormSpec& spec) {
  const NormSpec* cur = &spec;
  while (const auto* s = std::get_if<Scaled>(&cur->node().value)) cur = &s->inner;
  return *cur;
}

NormAxiomReport check_norm_axioms(const NormSpec& spec, std::size_t k, std::size_t trials, std::uint64_t seed) {
  if (!spec.accepts_dimension(k))
    throw Error(ErrorCode::DimensionMismatch, spec.describe() + " is not a norm on R^" + std::to_string(k));
  Rng rng(seed);
  NormAxiomReport report;
  report.trials = trials;
  auto draw = [&] {
    auto v = rng.gaussian_vector(k);
    const double magnitude = std::pow(10.0, rng.uniform(-3.0, 3.0));
    for (auto& c : v) c *= magnitude;
    return v;
  };

  const std::vector<double> zero(k, 0.0);
  if (spec(zero) != 0.0) report.failures.push_back({"positivity", zero, {}, 0.0, spec(zero), 0.0});

  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = draw();
    const auto y = draw();
    const double nx = spec(x);
    if (!(nx > 0.0)) report.failures.push_back({"positivity", x, {}, 0.0, nx, 0.0});

    const double scalar = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(rng.uniform(-5.0, 5.0));
    std::vector<double> sx = x;
    for (auto& c : sx) c *= scalar;
    const double lhs = spec(sx);
    const double rhs = std::abs(scalar) * nx;
    if (std::abs(lhs - rhs) > 1e-10 * rhs) report.failures.push_back({"homogeneity", x, {}, scalar, lhs, rhs});

    std::vector<double> xy(k);
    for (std::size_t i = 0; i < k; ++i) xy[i] = x[i] + y[i];
    const double nxy = spec(xy);
    const double bound = nx + spec(y);
    if (nxy > bound * (1.0 + 1e-12)) report.failures.push_back({"subadditivity", x, y, 0.0, nxy, bound});
  }
  return report;
}

std::optional<double> distance_closed_form(const NormSpec& a_in, const NormSpec& b_in, std::size_t k) {
  if (k == 0) return std::nullopt;
  const auto& a = strip_scale(a_in).node().value;
  const auto& b = strip_scale(b_in).node().value;
  const double logk = std::log(static_cast<double>(k));

  if (const auto* pa = std::get_if<PNorm>(&a)) {
    if (const auto* pb = std::get_if<PNorm>(&b))
      return std::abs(inverse_exponent(pa->p) - inverse_exponent(pb->p)) * logk;
  }

  if (const auto* na = std::get_if<Perturbed>(&a)) {
    if (const auto* nb = std::get_if<Perturbed>(&b)) {
      if (na->p != nb->p || k < 2 || na->axis >= k || nb->axis >= k) return std::nullopt;
      if (na->axis == nb->axis) return std::abs(std::log1p(nb->q) - std::log1p(na->q));
      return std::log1p(na->q) + std::log1p(nb->q);
    }
  }

  const Mixture* mix = std::get_if<Mixture>(&a);
  const PNorm* ref = std::get_if<PNorm>(&b);
  if (!mix || !ref) {
    mix = std::get_if<Mixture>(&b);
    ref = std::get_if<PNorm>(&a);
  }
  if (mix && ref) {
    const double q = ref->p;
    if (*std::max_element(mix->exponents.begin(), mix->exponents.end()) >= q) return std::nullopt;
    double top = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < mix->exponents.size(); ++i) {
      top += mix->masses[i] * std::pow(static_cast<double>(k), 1.0 / mix->exponents[i]);
      mass += mix->masses[i];
    }
    return std::log(top) - (inverse_exponent(q) * logk + std::log(mass));
  }
  return std::nullopt;
}

Matrix signed_permutation(std::span<const std::size_t> perm, std::span<const int> signs) {
  const std::size_t k = perm.size();
  if (signs.size() != k) throw Error(ErrorCode::BadDimensions, "one sign per coordinate required");
  std::vector<bool> seen(k, false);
  Matrix a(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (perm[i] >= k || seen[perm[i]]) throw Error(ErrorCode::ParameterOutOfRange, "not a permutation");
    if (signs[i] != 1 && signs[i] != -1) throw Error(ErrorCode::ParameterOutOfRange, "signs must be +1 or -1");
    seen[perm[i]] = true;
    a(i, perm[i]) = signs[i];
  }
  return a;
}

}  // namespace normspace
