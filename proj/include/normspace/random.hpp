#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace normspace {

/// Seeded random source used everywhere randomness is needed.
///
/// The engine is std::mt19937_64 (the 64-bit Mersenne Twister, a twisted
/// generalized feedback shift register whose output sequence is fixed by the
/// C++ standard). The derived distributions are implemented here rather than
/// taken from <random>, whose distribution algorithms are left to the
/// standard library vendor; this keeps every sample bit-identical across
/// toolchains for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n);

  /// Standard normal vector of length k.
  std::vector<double> gaussian_vector(std::size_t k);

  /// Seed for an independent child stream.
  std::uint64_t fork() { return engine_() ^ 0x9e3779b97f4a7c15ULL; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace normspace
