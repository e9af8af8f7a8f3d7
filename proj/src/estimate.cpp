#include "normspace/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "normspace/error.hpp"
#include "normspace/random.hpp"

namespace normspace {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_dimension(const NormSpec& spec, std::size_t k) {
  if (!spec.accepts_dimension(k))
    throw Error(ErrorCode::DimensionMismatch, spec.describe() + " does not act on R^" + std::to_string(k));
}

struct Walk {
  std::vector<double> point;
  double value;
};

// Maximises objective(x) starting from a domain point.
template <class Objective>
Walk climb(const SampleDomain& domain, std::vector<double> start, double start_value, Objective&& objective,
           std::uint64_t seed, const EstimateOptions& options) {
  const std::size_t k = domain.dimension();
  Walk best{std::move(start), start_value};
  double scale = 0.0;
  for (double v : best.point) scale = std::max(scale, std::abs(v));
  double step = 0.1 * scale;
  const double floor = options.step_floor * scale;
  Rng rng(seed);
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;

  for (int sweep = 0; sweep < options.refine_iters && step >= floor; ++sweep) {
    for (std::size_t i = k; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    bool improved = false;
    for (std::size_t c : order) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = best.point;
        trial[c] += dir * step;
        if (std::all_of(trial.begin(), trial.end(), [](double v) { return v == 0.0; })) continue;
        trial = domain.project(trial);
        const double value = objective(trial);
        if (value > best.value) {
          best = {std::move(trial), value};
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

NormDistanceEstimate estimate_distance(const NormSpec& a_in, const NormSpec& b_in, const SampleDomain& domain,
                                       const EstimateOptions& options) {
  const NormSpec& a = strip_scale(a_in);
  const NormSpec& b = strip_scale(b_in);
  const std::size_t k = domain.dimension();
  require_dimension(a, k);
  require_dimension(b, k);
  const auto& points = domain.points();
  if (points.empty()) throw Error(ErrorCode::EmptyDomain, "sample domain has no points");

  auto log_ratio = [&](std::span<const double> x) {
    return std::log(b.evaluate_unchecked(x)) - std::log(a.evaluate_unchecked(x));
  };

  std::vector<double> values(points.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(points.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) values[i] = log_ratio(points[i]);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(points.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) values[i] = log_ratio(points[i]);
      });
    }
  }

  std::size_t imax = 0;
  std::size_t imin = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[imax]) imax = i;
    if (values[i] < values[imin]) imin = i;
  }

  NormDistanceEstimate est;
  est.lower_bound = values[imax] - values[imin];
  est.samples_used = points.size();
  est.seed = domain.seed();

  // The walk seed depends only on the start index, so swapping a and b
  // replays the same walks with negated objectives.
  auto up = climb(domain, points[imax], values[imax], log_ratio, splitmix64(domain.seed() + imax), options);
  auto down = climb(
      domain, points[imin], -values[imin], [&](std::span<const double> x) { return -log_ratio(x); },
      splitmix64(domain.seed() + imin), options);
  est.refined = up.value + down.value;
  est.arg_max = std::move(up.point);
  est.arg_min = std::move(down.point);
  return est;
}

QuotientFunction log_restriction(const NormSpec& spec, const SampleDomain& domain) {
  require_dimension(spec, domain.dimension());
  if (domain.size() == 0) throw Error(ErrorCode::EmptyDomain, "sample domain has no points");
  std::vector<double> values;
  values.reserve(domain.size());
  for (const auto& x : domain.points()) values.push_back(std::log(spec.evaluate_unchecked(x)));
  auto labels = indexed_labels(domain.size());
  const std::string anchor = labels.front();
  return kuratowski_section(RealFunction(std::move(labels), std::move(values)), anchor);
}

PrecomposeReport precompose_invariance_check(const NormSpec& a, const NormSpec& b, const Matrix& transform,
                                             const SampleDomain& domain) {
  const std::size_t k = domain.dimension();
  if (transform.rows() != k || transform.cols() != k)
    throw Error(ErrorCode::DimensionMismatch, "matrix does not act on R^" + std::to_string(k));
  require_dimension(a, k);
  require_dimension(b, k);
  if (domain.size() == 0) throw Error(ErrorCode::EmptyDomain, "sample domain has no points");
  const LuSolver lu(transform);
  const NormSpec pa = NormSpec::precomposed(transform, a);
  const NormSpec pb = NormSpec::precomposed(transform, b);

  std::vector<double> original;
  std::vector<double> pulled;
  PrecomposeReport report;
  for (const auto& x : domain.points()) {
    const auto z = lu.solve(x);
    original.push_back(std::log(b.evaluate_unchecked(x)) - std::log(a.evaluate_unchecked(x)));
    pulled.push_back(std::log(pb.evaluate_unchecked(z)) - std::log(pa.evaluate_unchecked(z)));
    report.max_log_ratio_gap = std::max(report.max_log_ratio_gap, std::abs(original.back() - pulled.back()));
  }
  report.original = diameter(original);
  report.pulled_back = diameter(pulled);
  report.invariant = std::abs(report.original - report.pulled_back) <= 1e-12;
  report.displacement_a = estimate_distance(pa, a, domain).refined;
  report.displacement_b = estimate_distance(pb, b, domain).refined;
  return report;
}

double dual_norm_eval(const NormSpec& spec, std::span<const double> y, const SampleDomain& domain) {
  const std::size_t k = domain.dimension();
  require_dimension(spec, k);
  if (y.size() != k) throw Error(ErrorCode::DimensionMismatch, "dual argument has the wrong dimension");
  if (domain.size() == 0) throw Error(ErrorCode::EmptyDomain, "sample domain has no points");
  double best = 0.0;
  for (const auto& x : domain.points()) {
    double dot = 0.0;
    for (std::size_t i = 0; i < k; ++i) dot += x[i] * y[i];
    best = std::max(best, dot / spec.evaluate_unchecked(x));
  }
  return best;
}

double estimate_dual_distance(const NormSpec& a, const NormSpec& b, const SampleDomain& inner,
                              const SampleDomain& outer) {
  const std::size_t k = inner.dimension();
  if (outer.dimension() != k) throw Error(ErrorCode::DimensionMismatch, "domains have different dimensions");
  require_dimension(a, k);
  require_dimension(b, k);
  if (inner.size() == 0 || outer.size() == 0) throw Error(ErrorCode::EmptyDomain, "sample domain has no points");

  // Unit-ball boundary points x / N(x) for each norm, computed once.
  auto normalised = [&](const NormSpec& spec) {
    std::vector<std::vector<double>> out;
    out.reserve(inner.size());
    for (const auto& x : inner.points()) {
      const double n = spec.evaluate_unchecked(x);
      std::vector<double> u(x);
      for (auto& v : u) v /= n;
      out.push_back(std::move(u));
    }
    return out;
  };
  const auto ua = normalised(a);
  const auto ub = normalised(b);
  auto dual = [&](const std::vector<std::vector<double>>& ball, std::span<const double> y) {
    double best = 0.0;
    for (const auto& u : ball) {
      double dot = 0.0;
      for (std::size_t i = 0; i < k; ++i) dot += u[i] * y[i];
      best = std::max(best, dot);
    }
    return best;
  };
  std::vector<double> ratios;
  ratios.reserve(outer.size());
  for (const auto& y : outer.points()) ratios.push_back(std::log(dual(ub, y)) - std::log(dual(ua, y)));
  return diameter(ratios);
}

}  // namespace normspace
