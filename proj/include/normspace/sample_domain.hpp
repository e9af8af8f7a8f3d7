#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "normspace/norms.hpp"

namespace normspace {

/// { x : reference(x) = radius }.
struct NormSphere {
  NormSpec reference;
  double radius = 1.0;
};

/// { x : ||x - center||_2^2 = 1 + ||center||_2^2 }, center != 0. The origin
/// lies inside, and each ray from the origin meets the sphere once.
struct OffCenterSphere {
  std::vector<double> center;
};

using SphereKind = std::variant<NormSphere, OffCenterSphere>;

/// Finite set of nonzero points on a sphere around the origin, at most one
/// per ray. Stand-in for the compact set of representatives over which
/// norm ratios are compared.
///
/// Point order: canonical points first, then random ones. For a NormSphere
/// the canonical directions are +e_1, -e_1, ..., +e_k, -e_k and the all-ones
/// vector; for an OffCenterSphere they are +center and -center. Random
/// directions are normalised Gaussian vectors from Rng(seed).
class SampleDomain {
 public:
  /// Throws ZeroCenter, ParameterOutOfRange (radius), DimensionMismatch.
  static SampleDomain sample(SphereKind kind, std::size_t k, std::size_t count, std::uint64_t seed);
  /// Rebuilds a domain from stored points, checking the sphere equation.
  static SampleDomain from_points(SphereKind kind, std::size_t k, std::vector<std::vector<double>> points,
                                  std::uint64_t seed, std::size_t count);

  std::size_t dimension() const noexcept { return k_; }
  const SphereKind& kind() const noexcept { return kind_; }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t requested_count() const noexcept { return count_; }

  /// The point of this sphere on the ray through x (x != 0).
  std::vector<double> project(std::span<const double> x) const;
  /// |reference(x) - r| for a NormSphere, |  ||x-y||^2 - (1+||y||^2) | otherwise.
  double sphere_residual(std::span<const double> x) const;

  /// Copy with the given directions projected onto the sphere and appended,
  /// skipping rays already present.
  SampleDomain with_directions(const std::vector<std::vector<double>>& directions) const;

 private:
  SampleDomain(SphereKind kind, std::size_t k, std::uint64_t seed, std::size_t count)
      : kind_(std::move(kind)), k_(k), seed_(seed), count_(count) {}

  bool try_add(std::span<const double> direction);

  SphereKind kind_;
  std::size_t k_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t count_ = 0;
  std::vector<std::vector<double>> points_;
  std::set<std::vector<long long>> ray_keys_;
};

/// +e_1, -e_1, ..., +e_k, -e_k, (1, ..., 1).
std::vector<std::vector<double>> canonical_directions(std::size_t k);

}  // namespace normspace
