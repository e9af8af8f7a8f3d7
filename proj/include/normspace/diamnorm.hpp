#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normspace/error.hpp"
#include "normspace/random.hpp"

namespace normspace {

/// An abelian semigroup with a translation-invariant metric,
/// d(x + z, y + z) = d(x, y). Carriers are stateless: every operation is a
/// static member. `random` feeds the property tests.
template <class C>
concept MetricSemigroup = requires(const typename C::value_type& x, const typename C::value_type& y, Rng& rng) {
  { C::add(x, y) } -> std::convertible_to<typename C::value_type>;
  { C::distance(x, y) } -> std::convertible_to<double>;
  { C::random(rng) } -> std::convertible_to<typename C::value_type>;
  { C::name } -> std::convertible_to<std::string_view>;
};

/// Carriers with negatives, where d(f, g) collapses to the diameter of f - g.
template <class C>
concept MetricGroup = MetricSemigroup<C> && requires(const typename C::value_type& x) {
  { C::negate(x) } -> std::convertible_to<typename C::value_type>;
};

struct RealLine {
  using value_type = double;
  static constexpr std::string_view name = "reals";
  static double add(double x, double y) { return x + y; }
  static double negate(double x) { return -x; }
  static double distance(double x, double y) { return std::abs(x - y); }
  static double random(Rng& rng) { return rng.uniform(-10.0, 10.0); }
};

/// Z^3 with the l1 distance.
struct IntLattice3 {
  using value_type = std::array<std::int64_t, 3>;
  static constexpr std::string_view name = "Z3_l1";
  static value_type add(const value_type& x, const value_type& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
  static value_type negate(const value_type& x) { return {-x[0], -x[1], -x[2]}; }
  static double distance(const value_type& x, const value_type& y) {
    return static_cast<double>(std::llabs(x[0] - y[0]) + std::llabs(x[1] - y[1]) + std::llabs(x[2] - y[2]));
  }
  static value_type random(Rng& rng) {
    value_type v{};
    for (auto& c : v) c = static_cast<std::int64_t>(rng.index(41)) - 20;
    return v;
  }
};

/// A function from a finite list of distinct labels (at least two) into a carrier.
template <MetricSemigroup C>
class BoundedFunction {
 public:
  using carrier = C;
  using value_type = typename C::value_type;

  BoundedFunction(std::vector<std::string> labels, std::vector<value_type> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.size() < 2) throw Error(ErrorCode::BadDimensions, "domain needs at least two labels");
    if (labels_.size() != values_.size()) throw Error(ErrorCode::BadDimensions, "one value per label required");
    std::vector<std::string> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::DomainMismatch, "domain labels must be distinct");
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<value_type>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Throws AnchorNotInDomain for an unknown label.
  std::size_t position(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw Error(ErrorCode::AnchorNotInDomain, "label '" + std::string(label) + "' is not in the domain");
  }

  friend bool operator==(const BoundedFunction&, const BoundedFunction&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<value_type> values_;
};

using RealFunction = BoundedFunction<RealLine>;

/// Labels "x0", "x1", ... for n points.
std::vector<std::string> indexed_labels(std::size_t n);

namespace detail {
template <class C>
void require_same_domain(const BoundedFunction<C>& f, const BoundedFunction<C>& g) {
  if (f.labels() != g.labels()) throw Error(ErrorCode::DomainMismatch, "functions live on different domains");
}
}  // namespace detail

/// sup over ordered label pairs (x, x') of d(f(x) + g(x'), f(x') + g(x)).
template <MetricSemigroup C>
double pair_pseudometric(const BoundedFunction<C>& f, const BoundedFunction<C>& g) {
  detail::require_same_domain(f, g);
  const auto& fv = f.values();
  const auto& gv = g.values();
  double best = 0.0;
  for (std::size_t x = 0; x < fv.size(); ++x)
    for (std::size_t y = 0; y < fv.size(); ++y)
      best = std::max(best, static_cast<double>(C::distance(C::add(fv[x], gv[y]), C::add(fv[y], gv[x]))));
  return best;
}

/// max over labels of d(f(x), g(x)).
template <MetricSemigroup C>
double sup_distance(const BoundedFunction<C>& f, const BoundedFunction<C>& g) {
  detail::require_same_domain(f, g);
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    best = std::max(best, static_cast<double>(C::distance(f.values()[i], g.values()[i])));
  return best;
}

/// diam(im f) = sup d(f(x), f(x')).
template <MetricSemigroup C>
double diameter_seminorm(const BoundedFunction<C>& f) {
  double best = 0.0;
  const auto& v = f.values();
  for (std::size_t x = 0; x < v.size(); ++x)
    for (std::size_t y = x + 1; y < v.size(); ++y) best = std::max(best, static_cast<double>(C::distance(v[x], v[y])));
  return best;
}

/// max - min; the real-valued specialisation of the above.
double diameter_seminorm(const RealFunction& f);
/// max - min of a nonempty list of reals.
double diameter(std::span<const double> values);

template <MetricSemigroup C>
BoundedFunction<C> pointwise_sum(const BoundedFunction<C>& f, const BoundedFunction<C>& g) {
  detail::require_same_domain(f, g);
  std::vector<typename C::value_type> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = C::add(f.values()[i], g.values()[i]);
  return BoundedFunction<C>(f.labels(), std::move(v));
}

template <MetricGroup C>
BoundedFunction<C> pointwise_difference(const BoundedFunction<C>& f, const BoundedFunction<C>& g) {
  detail::require_same_domain(f, g);
  std::vector<typename C::value_type> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = C::add(f.values()[i], C::negate(g.values()[i]));
  return BoundedFunction<C>(f.labels(), std::move(v));
}

/// f translated by the constant c.
template <MetricSemigroup C>
BoundedFunction<C> translate(const BoundedFunction<C>& f, const typename C::value_type& c) {
  std::vector<typename C::value_type> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = C::add(f.values()[i], c);
  return BoundedFunction<C>(f.labels(), std::move(v));
}

/// A real function modulo additive constants, stored as the representative
/// that vanishes at `anchor`.
class QuotientFunction {
 public:
  /// Throws AnchorNotInDomain; otherwise requires base(anchor) == 0.
  QuotientFunction(RealFunction base, std::string anchor);

  const RealFunction& base() const noexcept { return base_; }
  const std::string& anchor() const noexcept { return anchor_; }
  double diameter() const { return diameter_seminorm(base_); }

  friend bool operator==(const QuotientFunction&, const QuotientFunction&) = default;

 private:
  RealFunction base_;
  std::string anchor_;
};

/// The section x -> f(x) - f(anchor).
QuotientFunction kuratowski_section(const RealFunction& f, const std::string& anchor);

/// Quotient distance between two classes: the diameter of the difference.
double quotient_distance(const QuotientFunction& f, const QuotientFunction& g);

/// Sampled lower bound of the Hom-space distance between semigroup maps
/// eta, phi : M -> N,
///   max over samples (m, m') of d_N(eta(m) + phi(m'), phi(m) + eta(m')) / d_M(m, m').
/// The true distance is a supremum over all m != m' of M; this only sees
/// the samples. Throws DegenerateSample when some m == m'.
template <MetricSemigroup M, MetricSemigroup N, class Eta, class Phi>
double hom_distance_lower_bound(Eta&& eta, Phi&& phi,
                                std::span<const std::pair<typename M::value_type, typename M::value_type>> samples) {
  double best = 0.0;
  for (const auto& [m, mp] : samples) {
    const double base = M::distance(m, mp);
    if (!(base > 0.0)) throw Error(ErrorCode::DegenerateSample, "sample pair with m == m'");
    const double top = N::distance(N::add(eta(m), phi(mp)), N::add(phi(m), eta(mp)));
    best = std::max(best, top / base);
  }
  return best;
}

}  // namespace normspace
