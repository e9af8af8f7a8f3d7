#include "normspace/sample_domain.hpp"

#include <algorithm>
#include <cmath>

#include "normspace/error.hpp"
#include "normspace/random.hpp"

namespace normspace {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Two directions share a ray when their unit vectors agree on a 1e-9 grid.
std::vector<long long> ray_key(std::span<const double> x) {
  const double len = std::sqrt(dot(x, x));
  std::vector<long long> key(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) key[i] = std::llround(x[i] / len * 1e9);
  return key;
}

void validate_kind(const SphereKind& kind, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::BadDimensions, "dimension must be positive");
  if (const auto* s = std::get_if<NormSphere>(&kind)) {
    if (!(s->radius > 0.0) || !std::isfinite(s->radius))
      throw Error(ErrorCode::ParameterOutOfRange, "sphere radius must be positive");
    if (!s->reference.accepts_dimension(k))
      throw Error(ErrorCode::DimensionMismatch, "reference norm does not act on R^" + std::to_string(k));
  } else {
    const auto& y = std::get<OffCenterSphere>(kind).center;
    if (y.size() != k) throw Error(ErrorCode::DimensionMismatch, "center has the wrong dimension");
    if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; }))
      throw Error(ErrorCode::ZeroCenter, "off-center sphere needs a nonzero center");
  }
}

}  // namespace

std::vector<std::vector<double>> canonical_directions(std::size_t k) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < k; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(k, 0.0);
      e[i] = s;
      dirs.push_back(std::move(e));
    }
  }
  dirs.emplace_back(k, 1.0);
  return dirs;
}

std::vector<double> SampleDomain::project(std::span<const double> x) const {
  if (x.size() != k_) throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
  std::vector<double> out(x.begin(), x.end());
  if (const auto* s = std::get_if<NormSphere>(&kind_)) {
    const double scale = s->radius / s->reference.evaluate_unchecked(x);
    for (auto& v : out) v *= scale;
    return out;
  }
  const auto& y = std::get<OffCenterSphere>(kind_).center;
  const double len = std::sqrt(dot(x, x));
  for (auto& v : out) v /= len;
  const double vy = dot(out, y);
  const double alpha = std::sqrt(1.0 + vy * vy) + vy;
  for (auto& v : out) v *= alpha;
  return out;
}

double SampleDomain::sphere_residual(std::span<const double> x) const {
  if (const auto* s = std::get_if<NormSphere>(&kind_)) return std::abs(s->reference(x) - s->radius);
  const auto& y = std::get<OffCenterSphere>(kind_).center;
  double lhs = 0.0;
  for (std::size_t i = 0; i < k_; ++i) lhs += (x[i] - y[i]) * (x[i] - y[i]);
  return std::abs(lhs - (1.0 + dot(y, y)));
}

bool SampleDomain::try_add(std::span<const double> direction) {
  if (std::all_of(direction.begin(), direction.end(), [](double v) { return v == 0.0; })) return false;
  if (!ray_keys_.insert(ray_key(direction)).second) return false;
  points_.push_back(project(direction));
  return true;
}

SampleDomain SampleDomain::sample(SphereKind kind, std::size_t k, std::size_t count, std::uint64_t seed) {
  validate_kind(kind, k);
  SampleDomain domain(std::move(kind), k, seed, count);
  if (std::holds_alternative<NormSphere>(domain.kind_)) {
    for (const auto& d : canonical_directions(k)) domain.try_add(d);
  } else {
    auto y = std::get<OffCenterSphere>(domain.kind_).center;
    domain.try_add(y);
    for (auto& v : y) v = -v;
    domain.try_add(y);
  }
  Rng rng(seed);
  std::size_t added = 0;
  while (added < count) {
    const auto v = rng.gaussian_vector(k);
    if (domain.try_add(v)) ++added;
  }
  return domain;
}

SampleDomain SampleDomain::from_points(SphereKind kind, std::size_t k, std::vector<std::vector<double>> points,
                                       std::uint64_t seed, std::size_t count) {
  validate_kind(kind, k);
  SampleDomain domain(std::move(kind), k, seed, count);
  for (auto& p : points) {
    if (p.size() != k) throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
    const double scale =
        std::holds_alternative<NormSphere>(domain.kind_) ? std::get<NormSphere>(domain.kind_).radius : 1.0;
    if (domain.sphere_residual(p) > 1e-9 * std::max(1.0, scale))
      throw Error(ErrorCode::ParameterOutOfRange, "point is not on the sphere");
    if (!domain.ray_keys_.insert(ray_key(p)).second)
      throw Error(ErrorCode::ParameterOutOfRange, "two points on the same ray");
    domain.points_.push_back(std::move(p));
  }
  return domain;
}

SampleDomain SampleDomain::with_directions(const std::vector<std::vector<double>>& directions) const {
  SampleDomain copy = *this;
  for (const auto& d : directions) {
    if (d.size() != k_) throw Error(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
    copy.try_add(d);
  }
  return copy;
}

}  // namespace normspace
