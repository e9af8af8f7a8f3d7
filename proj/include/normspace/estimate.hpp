#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "normspace/diamnorm.hpp"
#include "normspace/linalg.hpp"
#include "normspace/norms.hpp"
#include "normspace/sample_domain.hpp"

namespace normspace {

struct EstimateOptions {
  int refine_iters = 64;     // hill-climbing sweeps per witness
  double step_floor = 1e-10;  // stop once the step shrinks below this (relative to the start point)
  unsigned threads = 1;       // sample evaluation only; results do not depend on it
};

/// Lower bounds for the quotient distance log(M / m), where M and m are the
/// best constants in m a(x) <= b(x) <= M a(x).
struct NormDistanceEstimate {
  double lower_bound = 0.0;  // max - min of log(b/a) over the domain points
  double refined = 0.0;      // after local search; lower_bound <= refined <= true distance
  std::vector<double> arg_max;  // where log(b/a) is largest (after refinement)
  std::vector<double> arg_min;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
};

/// Evaluates log(b(x) / a(x)) over the domain, then runs projected
/// coordinate-wise hill climbing from the two extremal points: each sweep
/// visits the coordinates in a seeded random order, tries +-step along each,
/// reprojects onto the domain's sphere and keeps strict improvements; a
/// sweep without improvement halves the step. Every evaluated point lies on
/// the sphere, so the result never exceeds the true distance.
///
/// Outer Scaled wrappers are dropped first, and ties between extremal
/// points go to the lowest index, which makes the result exactly symmetric
/// in (a, b) and exactly invariant under rescaling either argument.
NormDistanceEstimate estimate_distance(const NormSpec& a, const NormSpec& b, const SampleDomain& domain,
                                       const EstimateOptions& options = {});

/// x -> log spec(x) over the domain points (labels x0, x1, ...), as the
/// class anchored at x0.
QuotientFunction log_restriction(const NormSpec& spec, const SampleDomain& domain);

struct PrecomposeReport {
  double original = 0.0;           // d(a, b) sampled on the domain
  double pulled_back = 0.0;        // d(a o A, b o A) sampled on A^-1 (domain)
  double max_log_ratio_gap = 0.0;  // max over points of the two log ratios' difference
  double displacement_a = 0.0;     // refined estimate of d(a o A, a) on the domain
  double displacement_b = 0.0;     // refined estimate of d(b o A, b) on the domain
  bool invariant = false;          // |original - pulled_back| <= 1e-12
};

/// Throws SingularMatrix, DimensionMismatch.
PrecomposeReport precompose_invariance_check(const NormSpec& a, const NormSpec& b, const Matrix& transform,
                                             const SampleDomain& domain);

/// max over domain points of <x, y> / spec(x): a lower bound of the dual
/// norm at y, exact when a maximiser is among the points.
double dual_norm_eval(const NormSpec& spec, std::span<const double> y, const SampleDomain& domain);

/// Sampled distance between the dual norms a* and b*: the spread of
/// log(b*(y) / a*(y)) over `outer` points, with each dual value computed by
/// dual_norm_eval over `inner`. Both dual values are themselves
/// underestimates, so this is an approximation, not a bound.
double estimate_dual_distance(const NormSpec& a, const NormSpec& b, const SampleDomain& inner,
                              const SampleDomain& outer);

}  // namespace normspace
