#include "normspace/diamnorm.hpp"

#include <algorithm>

namespace normspace {

std::vector<std::string> indexed_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
  return labels;
}

double diameter(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::BadDimensions, "diameter of an empty list");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double diameter_seminorm(const RealFunction& f) { return diameter(f.values()); }

QuotientFunction::QuotientFunction(RealFunction base, std::string anchor)
    : base_(std::move(base)), anchor_(std::move(anchor)) {
  if (base_.values()[base_.position(anchor_)] != 0.0)
    throw Error(ErrorCode::ParameterOutOfRange, "representative must vanish at the anchor");
}

QuotientFunction kuratowski_section(const RealFunction& f, const std::string& anchor) {
  const double shift = f.values()[f.position(anchor)];
  std::vector<double> v(f.values());
  for (auto& x : v) x -= shift;
  return QuotientFunction(RealFunction(f.labels(), std::move(v)), anchor);
}

double quotient_distance(const QuotientFunction& f, const QuotientFunction& g) {
  return diameter_seminorm(pointwise_difference(f.base(), g.base()));
}

}  // namespace normspace
