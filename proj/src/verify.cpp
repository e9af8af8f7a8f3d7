#include "normspace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "normspace/diamnorm.hpp"
#include "normspace/embeddings.hpp"
#include "normspace/error.hpp"
#include "normspace/estimate.hpp"
#include "normspace/metric.hpp"
#include "normspace/norms.hpp"
#include "normspace/random.hpp"
#include "normspace/sample_domain.hpp"

namespace normspace {

namespace {

using nlohmann::json;

constexpr double kExact = 1e-12;
constexpr std::size_t kMaxStoredFailures = 50;
const double kExponents[] = {1.0, 1.5, 2.0, 3.0, kInf};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t suite_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix64(seed ^ h);
}

json num(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

class Suite {
 public:
  Suite(std::string name, const RunConfig& config)
      : config_(config), rng_(suite_seed(config.seed, name)), start_(std::chrono::steady_clock::now()) {
    result_.suite = std::move(name);
    result_.seed = suite_seed(config.seed, result_.suite);
  }

  Rng& rng() { return rng_; }
  const RunConfig& config() const { return config_; }
  EstimateOptions options() const { return {config_.refine_iters, 1e-10, config_.threads}; }

  void check(bool ok, std::string_view what, json witness = json::object()) {
    ++result_.cases;
    if (ok) return;
    ++failure_count_;
    if (result_.failures.size() < kMaxStoredFailures) result_.failures.push_back({std::string(what), std::move(witness)});
  }
  void note(std::string text) { result_.notes.push_back(std::move(text)); }

  SuiteResult finish() {
    if (failure_count_ > result_.failures.size())
      note(std::to_string(failure_count_ - result_.failures.size()) + " further failures not stored");
    result_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(result_);
  }

 private:
  const RunConfig& config_;
  Rng rng_;
  std::chrono::steady_clock::time_point start_;
  SuiteResult result_;
  std::size_t failure_count_ = 0;
};

SampleDomain unit_domain(std::size_t k, std::size_t count, std::uint64_t seed) {
  return SampleDomain::sample(NormSphere{NormSpec::pnorm(2.0), 1.0}, k, count, seed);
}

double random_exponent(Rng& rng) {
  if (rng.index(2) == 0) return kExponents[rng.index(5)];
  return rng.uniform(1.0, 5.0);
}

Matrix gaussian_matrix(std::size_t k, Rng& rng) {
  Matrix a(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a(i, j) = rng.normal();
  return a;
}

Matrix invertible_matrix(std::size_t k, Rng& rng) {
  for (;;) {
    Matrix a = gaussian_matrix(k, rng);
    if (relative_determinant(a) > 1e-3) return a;
  }
}

// Arguments are drawn in separate statements: evaluation order of function
// arguments is unspecified and would make the stream compiler-dependent.
NormSpec random_norm(std::size_t k, Rng& rng, int depth = 0) {
  switch (rng.index(depth >= 2 ? 4 : 7)) {
    case 0:
      return NormSpec::pnorm(random_exponent(rng));
    case 1: {
      const double p = random_exponent(rng);
      const double q = rng.uniform(0.0, 3.0);
      return NormSpec::perturbed(p, q, rng.index(k));
    }
    case 2: {
      std::vector<double> ps, ms;
      const std::size_t atoms = 1 + rng.index(3);
      for (std::size_t i = 0; i < atoms; ++i) {
        ps.push_back(rng.uniform(1.0, 6.0));
        ms.push_back(rng.uniform(0.1, 2.0));
      }
      return NormSpec::mixture(ps, ms);
    }
    case 3: {
      for (;;) {
        std::vector<double> ws;
        std::vector<std::vector<double>> fs;
        const std::size_t terms = k + rng.index(2);
        for (std::size_t i = 0; i < terms; ++i) {
          ws.push_back(rng.uniform(0.1, 2.0));
          fs.push_back(rng.gaussian_vector(k));
        }
        try {
          return NormSpec::weighted_abs(ws, fs);
        } catch (const Error&) {
          // rank-deficient draw; try again
        }
      }
    }
    case 4: {
      Matrix a = invertible_matrix(k, rng);
      return NormSpec::precomposed(std::move(a), random_norm(k, rng, depth + 1));
    }
    case 5: {
      const double c = std::exp(rng.uniform(-2.0, 2.0));
      return NormSpec::scaled(c, random_norm(k, rng, depth + 1));
    }
    default: {
      NormSpec left = random_norm(k, rng, depth + 1);
      NormSpec right = random_norm(k, rng, depth + 1);
      return NormSpec::sum(left, right);
    }
  }
}

// plp --------------------------------------------------------------------------

SuiteResult suite_plp(const RunConfig& config) {
  Suite s("plp", config);
  for (std::size_t k : {2u, 3u, 4u, 8u}) {
    const SampleDomain domain = unit_domain(k, config.samples, s.rng().fork());
    for (double p : kExponents) {
      for (double q : kExponents) {
        const NormSpec a = NormSpec::pnorm(p);
        const NormSpec b = NormSpec::pnorm(q);
        const double closed = *distance_closed_form(a, b, k);
        const double expected = std::abs((std::isinf(p) ? 0.0 : 1.0 / p) - (std::isinf(q) ? 0.0 : 1.0 / q)) * std::log(k);
        const auto est = estimate_distance(a, b, domain, s.options());
        json w{{"p", num(p)}, {"q", num(q)}, {"k", k}, {"refined", est.refined}, {"lower_bound", est.lower_bound},
               {"closed_form", closed}};
        s.check(std::abs(closed - expected) <= kExact, "closed_form_formula", w);
        s.check(std::abs(est.refined - closed) <= config.tol, "refined_matches_closed_form", w);
        s.check(est.lower_bound <= est.refined && est.refined <= closed + config.tol, "estimate_bounds", w);
        const auto swapped = estimate_distance(b, a, domain, s.options());
        s.check(swapped.refined == est.refined && swapped.lower_bound == est.lower_bound, "symmetry", w);
        const auto scaled = estimate_distance(a, NormSpec::scaled(2.75, b), domain, s.options());
        s.check(scaled.refined == est.refined && scaled.lower_bound == est.lower_bound, "scale_quotient", w);
      }
    }
  }

  // General estimator laws on random norms sharing a domain.
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + s.rng().index(3);
    const SampleDomain domain = unit_domain(k, std::min<std::size_t>(config.samples, 2000), s.rng().fork());
    const NormSpec a = random_norm(k, s.rng());
    const NormSpec b = random_norm(k, s.rng());
    const NormSpec c = random_norm(k, s.rng());
    const double ab = estimate_distance(a, b, domain, s.options()).lower_bound;
    const double bc = estimate_distance(b, c, domain, s.options()).lower_bound;
    const double ac = estimate_distance(a, c, domain, s.options()).lower_bound;
    json w{{"a", a.describe()}, {"b", b.describe()}, {"c", c.describe()}, {"ab", ab}, {"bc", bc}, {"ac", ac}};
    s.check(ac <= ab + bc + kExact, "shared_domain_triangle", w);

    std::vector<std::vector<double>> extra;
    for (int i = 0; i < 100; ++i) extra.push_back(s.rng().gaussian_vector(k));
    const double larger = estimate_distance(a, b, domain.with_directions(extra), s.options()).lower_bound;
    s.check(larger >= ab, "monotone_in_samples", {{"before", ab}, {"after", larger}});

    const auto axioms = check_norm_axioms(a, k, config.samples, s.rng().fork());
    json aw{{"norm", a.describe()}, {"k", k}};
    if (!axioms.ok()) aw["axiom"] = axioms.failures.front().axiom;
    s.check(axioms.ok(), "norm_axioms", aw);
  }
  return s.finish();
}

// pskp -------------------------------------------------------------------------

SuiteResult suite_pskp(const RunConfig& config) {
  Suite s("pskp", config);
  std::vector<SampleDomain> domains;
  for (std::size_t k = 2; k <= 5; ++k) domains.push_back(unit_domain(k, config.samples, s.rng().fork()));
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + s.rng().index(4);
    const double p = random_exponent(s.rng());
    const double q = s.rng().uniform(0.0, 3.0);
    const double q2 = s.rng().uniform(0.0, 3.0);
    const std::size_t j = s.rng().index(k);
    const std::size_t j2 = trial % 2 == 0 ? j : (j + 1 + s.rng().index(k - 1)) % k;
    const NormSpec a = NormSpec::perturbed(p, q, j);
    const NormSpec b = NormSpec::perturbed(p, q2, j2);
    const double expected = j == j2 ? std::abs(std::log1p(q2) - std::log1p(q)) : std::log1p(q) + std::log1p(q2);
    const auto closed = distance_closed_form(a, b, k);
    const auto est = estimate_distance(a, b, domains[k - 2], s.options());
    json w{{"p", num(p)}, {"q", q}, {"j", j}, {"q2", q2}, {"j2", j2}, {"k", k}, {"refined", est.refined},
           {"expected", expected}};
    s.check(closed && std::abs(*closed - expected) <= kExact, "closed_form_formula", w);
    s.check(std::abs(est.refined - expected) <= config.tol, "refined_matches_closed_form", w);
    s.check(est.lower_bound <= est.refined, "estimate_bounds", w);
  }
  return s.finish();
}

// mixture ----------------------------------------------------------------------

SuiteResult suite_mixture(const RunConfig& config) {
  Suite s("mixture", config);
  std::vector<SampleDomain> domains;
  for (std::size_t k = 2; k <= 6; ++k) domains.push_back(unit_domain(k, config.samples, s.rng().fork()));
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + s.rng().index(5);
    const double q = s.rng().index(4) == 0 ? kInf : s.rng().uniform(1.5, 6.0);
    const double top = std::min(q, 6.0);
    std::vector<double> ps, ms;
    const std::size_t atoms = 1 + s.rng().index(4);
    for (std::size_t i = 0; i < atoms; ++i) {
      ps.push_back(s.rng().uniform(1.0, top));
      ms.push_back(s.rng().uniform(0.1, 2.0));
    }
    const NormSpec mix = NormSpec::mixture(ps, ms);
    const NormSpec ref = NormSpec::pnorm(q);
    // Independent evaluation at the all-ones vector and at e_1.
    double top_ratio = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
      top_ratio += ms[i] * std::pow(static_cast<double>(k), 1.0 / ps[i]);
      mass += ms[i];
    }
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const double expected = std::log(top_ratio) - inv_q * std::log(static_cast<double>(k)) - std::log(mass);
    const auto closed = distance_closed_form(mix, ref, k);
    const auto est = estimate_distance(mix, ref, domains[k - 2], s.options());
    json w{{"exponents", ps}, {"masses", ms}, {"q", num(q)}, {"k", k}, {"refined", est.refined}, {"expected", expected}};
    s.check(closed && std::abs(*closed - expected) <= 1e-12 * std::max(1.0, expected), "closed_form_formula", w);
    s.check(std::abs(est.refined - expected) <= config.tol, "refined_matches_closed_form", w);
  }
  return s.finish();
}

// rs1n -------------------------------------------------------------------------

SuiteResult suite_rs1n(const RunConfig& config) {
  Suite s("rs1n", config);
  Rng& rng = s.rng();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.index(4);
    const std::size_t pairs = pair_count(n);
    const std::size_t e1 = rng.index(pairs);
    const std::size_t e2 = trial % 4 == 0 ? e1 : rng.index(pairs);
    // a in (0, 2]; the endpoints 1 and 2 get drawn explicitly now and then.
    auto draw_a = [&rng]() {
      switch (rng.index(8)) {
        case 0: return 1.0;
        case 1: return 2.0;
        default: return 2.0 * (1.0 - rng.uniform());
      }
    };
    const double a1 = draw_a();
    const double a2 = draw_a();
    const double closed = rho_distance_closed_form(e1, a1, e2, a2);
    const double direct = log_distortion(rho_metric(n, e1, a1), rho_metric(n, e2, a2));
    s.check(std::abs(closed - direct) <= kExact, "rho_closed_form",
            {{"n", n}, {"edge", e1}, {"a", a1}, {"other_edge", e2}, {"other_a", a2}, {"closed", closed}, {"direct", direct}});
  }

  for (std::size_t n = 3; n <= 5; ++n) {
    for (std::size_t m = 1; m <= 20; ++m) {
      const double d = log_distortion(discrete_metric(n), line_witness(n, m));
      const double expected = std::log(static_cast<double>(n + m));
      s.check(std::abs(d - expected) <= kExact, "line_witness", {{"n", n}, {"m", m}, {"distance", d}});
    }
  }

  for (std::size_t n = 3; n <= 6; ++n) {
    const auto [r1, r2] = gh_pair(n, {0, 1}, {n - 2, n - 1});
    const auto sigma = brute_force_isometry(r1, r2);
    const double d = log_distortion(r1, r2);
    json w{{"n", n}, {"distance", d}};
    s.check(sigma.has_value(), "gh_pair_isometric", w);
    s.check(std::abs(d - std::log(4.0)) <= kExact, "gh_pair_distance_log4", w);
    s.check(!are_proportional(r1, r2).has_value(), "gh_pair_not_proportional", w);
  }

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.index(5);
    const FiniteMetric x = random_metric(n, rng);
    const FiniteMetric y = random_metric(n, rng);
    const FiniteMetric z = random_metric(n, rng);
    const double xy = log_distortion(x, y), yx = log_distortion(y, x);
    const double yz = log_distortion(y, z), xz = log_distortion(x, z);
    json w{{"n", n}, {"xy", xy}, {"yx", yx}, {"yz", yz}, {"xz", xz}};
    s.check(xy >= 0.0 && std::abs(xy - yx) <= kExact, "pseudometric_symmetry", w);
    s.check(xz <= xy + yz + kExact, "pseudometric_triangle", w);
    const double alpha = std::exp(rng.uniform(-3.0, 3.0));
    const FiniteMetric scaled = x.scaled(alpha);
    const auto prop = are_proportional(x, scaled);
    s.check(log_distortion(x, scaled) <= kExact && prop && std::abs(*prop - alpha) <= 1e-12 * alpha,
            "proportional_iff_zero", {{"n", n}, {"alpha", alpha}});
    s.check(xy > kExact && !are_proportional(x, y), "distinct_classes_positive", w);
    s.check(MetricClass(x) == MetricClass(scaled) || log_distortion(MetricClass(x).representative(),
                                                                     MetricClass(scaled).representative()) <= kExact,
            "class_representative", {{"n", n}, {"alpha", alpha}});
  }
  return s.finish();
}

// apex -------------------------------------------------------------------------

SuiteResult suite_apex(const RunConfig& config) {
  Suite s("apex", config);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + s.rng().index(5);
    const FiniteMetric x = random_metric(n, s.rng());
    const FiniteMetric y = random_metric(n, s.rng());
    const double before = log_distortion(x, y);
    const double after = log_distortion(apex_extend(x), apex_extend(y));
    s.check(std::abs(before - after) <= kExact, "apex_isometry", {{"n", n}, {"before", before}, {"after", after}});
  }
  return s.finish();
}

// diamnorm ---------------------------------------------------------------------

template <MetricGroup C>
BoundedFunction<C> random_function(const std::vector<std::string>& labels, Rng& rng) {
  std::vector<typename C::value_type> v;
  for (std::size_t i = 0; i < labels.size(); ++i) v.push_back(C::random(rng));
  return BoundedFunction<C>(labels, std::move(v));
}

template <MetricGroup C>
void diamnorm_laws(Suite& s, std::size_t trials, double slack) {
  Rng& rng = s.rng();
  const std::string carrier(C::name);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto labels = indexed_labels(2 + rng.index(7));
    const auto f = random_function<C>(labels, rng);
    const auto g = random_function<C>(labels, rng);
    const auto h = random_function<C>(labels, rng);
    const double fg = pair_pseudometric(f, g), gh = pair_pseudometric(g, h), fh = pair_pseudometric(f, h);
    json w{{"carrier", carrier}, {"size", labels.size()}, {"fg", fg}, {"gh", gh}, {"fh", fh}};
    s.check(fh <= fg + gh + slack, "triangle", w);

    const auto x = C::random(rng), y = C::random(rng), z = C::random(rng);
    s.check(std::abs(C::distance(C::add(x, z), C::add(y, z)) - C::distance(x, y)) <= slack, "carrier_translation",
            {{"carrier", carrier}});
    const auto shift = random_function<C>(labels, rng);
    s.check(std::abs(pair_pseudometric(pointwise_sum(f, shift), pointwise_sum(g, shift)) - fg) <= slack,
            "function_translation", w);

    s.check(fg <= 2.0 * sup_distance(f, g) + slack, "bounded_by_twice_sup", w);
    s.check(std::abs(fg - diameter_seminorm(pointwise_difference(f, g))) <= slack, "group_diameter_identity", w);

    const std::size_t anchor = rng.index(labels.size());
    const auto kf = translate(f, C::negate(f.values()[anchor]));
    const auto kg = translate(g, C::negate(g.values()[anchor]));
    s.check(sup_distance(kf, kg) <= fg + slack, "kuratowski_subcontraction", w);

    const auto f2 = translate(f, C::random(rng));
    const auto g2 = translate(g, C::random(rng));
    s.check(pair_pseudometric(f, f2) <= slack && pair_pseudometric(g, g2) <= slack &&
                pair_pseudometric(pointwise_sum(f, g), pointwise_sum(f2, g2)) <= slack,
            "addition_well_defined", w);
  }
}

SuiteResult suite_diamnorm(const RunConfig& config) {
  Suite s("diamnorm", config);
  diamnorm_laws<RealLine>(s, 500, 1e-11);
  diamnorm_laws<IntLattice3>(s, 500, 0.0);

  // Real carrier: d(f, g) = 0 exactly when f - g is constant.
  for (int t = 0; t < 100; ++t) {
    const auto labels = indexed_labels(2 + s.rng().index(7));
    const auto f = random_function<RealLine>(labels, s.rng());
    const auto g = random_function<RealLine>(labels, s.rng());
    const double c = s.rng().uniform(-10.0, 10.0);
    s.check(pair_pseudometric(f, translate(f, c)) <= 1e-11, "constant_difference_zero", {{"c", c}});
    s.check(pair_pseudometric(f, g) > 1e-9, "nonconstant_difference_positive", {{"size", labels.size()}});
  }

  // Hom-space lower bound on real scalings.
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < 50; ++i) {
    const double m = s.rng().uniform(-10.0, 10.0);
    samples.emplace_back(m, m + s.rng().uniform(0.1, 5.0));
  }
  const std::span<const std::pair<double, double>> view(samples);
  const double same = hom_distance_lower_bound<RealLine, RealLine>([](double x) { return 2 * x; },
                                                                   [](double x) { return 2 * x; }, view);
  const double unit = hom_distance_lower_bound<RealLine, RealLine>([](double x) { return 2 * x; },
                                                                   [](double x) { return 3 * x; }, view);
  const double general = hom_distance_lower_bound<RealLine, RealLine>([](double x) { return -1.5 * x; },
                                                                      [](double x) { return 4.25 * x; }, view);
  s.check(same == 0.0, "hom_equal_maps", {{"value", same}});
  s.check(std::abs(unit - 1.0) <= 1e-12, "hom_scalings_2_3", {{"value", unit}});
  s.check(std::abs(general - 5.75) <= 1e-12, "hom_scalings_general", {{"value", general}});
  return s.finish();
}

// schoenberg -------------------------------------------------------------------

FiniteMetric euclidean_points_metric(const std::vector<std::vector<double>>& pts) {
  std::vector<double> d;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double sum = 0.0;
      for (std::size_t c = 0; c < pts[i].size(); ++c) sum += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
      d.push_back(std::sqrt(sum));
    }
  return FiniteMetric::from_pairs(pts.size(), std::move(d));
}

SuiteResult suite_schoenberg(const RunConfig& config) {
  Suite s("schoenberg", config);
  const double tol = 1e-9;

  const auto tri = euclidean_embed(discrete_metric(3), 0, tol);
  s.check(tri.embeddable && tri.rank == 2 && std::abs(tri.eigenvalues[0] - 3.0) <= kExact &&
              std::abs(tri.eigenvalues[1] - 1.0) <= kExact && tri.residual <= 1e-9,
          "equilateral", {{"eigenvalues", tri.eigenvalues}, {"rank", tri.rank}, {"residual", tri.residual}});

  const auto line = euclidean_embed(FiniteMetric::from_pairs(3, {1.0, 2.0, 1.0}), 0, tol);
  s.check(line.embeddable && line.rank == 1 && line.matrix == Matrix::from_rows({{2, 4}, {4, 8}}) &&
              line.residual <= 2e-9,
          "collinear", {{"eigenvalues", line.eigenvalues}, {"rank", line.rank}});

  const auto star = euclidean_embed(FiniteMetric::from_pairs(4, {1, 1, 1, 2, 2, 2}), 0, tol);
  s.check(!star.embeddable && std::abs(star.eigenvalues.back() + 2.0) <= kExact && star.negative_witness.has_value(),
          "star_k13", {{"eigenvalues", star.eigenvalues}});

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + s.rng().index(4);
    const std::size_t dim = 1 + s.rng().index(4);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(s.rng().gaussian_vector(dim));
    const FiniteMetric r = euclidean_points_metric(pts);
    const std::size_t base = s.rng().index(n);
    const auto rep = euclidean_embed(r, base, tol);
    json w{{"n", n}, {"dim", dim}, {"base", base}, {"rank", rep.rank}, {"residual", rep.residual}};
    s.check(rep.embeddable, "euclidean_input_embeddable", w);
    s.check(rep.rank == std::min(dim, n - 1), "euclidean_input_rank", w);
    s.check(rep.residual <= 1e-9 * r.diameter(), "realization_roundtrip", w);
  }

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + s.rng().index(4);
    const FiniteMetric r = random_metric(n, s.rng());
    const auto first = euclidean_embed(r, 0, tol);
    bool same = true;
    for (std::size_t b = 1; b < n; ++b) same = same && euclidean_embed(r, b, tol).embeddable == first.embeddable;
    s.check(same, "verdict_base_independent", {{"metric", r.pair_values()}});
    if (first.embeddable) {
      s.check(first.residual <= 1e-9 * r.diameter(), "realization_roundtrip", {{"residual", first.residual}});
    } else {
      s.check(first.eigenvalues.back() < -first.threshold && first.negative_witness.has_value(), "negative_witness",
              {{"eigenvalues", first.eigenvalues}});
    }
  }
  return s.finish();
}

// isometries -------------------------------------------------------------------

std::vector<std::pair<std::vector<std::size_t>, std::vector<int>>> signed_permutations(std::size_t k) {
  std::vector<std::pair<std::vector<std::size_t>, std::vector<int>>> out;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<int> signs(k);
      for (std::size_t i = 0; i < k; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
      out.emplace_back(perm, signs);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

SuiteResult suite_isometries(const RunConfig& config) {
  Suite s("isometries", config);
  std::vector<SampleDomain> domains;
  for (std::size_t k = 2; k <= 4; ++k) domains.push_back(unit_domain(k, config.samples, s.rng().fork()));

  // Signed permutations fix every p-norm class.
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + s.rng().index(3);
    const double p = random_exponent(s.rng());
    const auto all = signed_permutations(k);
    const auto& [perm, signs] = all[s.rng().index(all.size())];
    const NormSpec n = NormSpec::pnorm(p);
    const auto est = estimate_distance(NormSpec::precomposed(signed_permutation(perm, signs), n), n, domains[k - 2],
                                       s.options());
    s.check(est.refined <= kExact, "signed_permutation_fixes_pnorm",
            {{"p", num(p)}, {"perm", perm}, {"signs", signs}, {"refined", est.refined}});
  }

  {
    const NormSpec linf = NormSpec::pnorm(kInf);
    const auto est = estimate_distance(NormSpec::precomposed(Matrix::from_rows({{1, 0}, {0, 2}}), linf), linf,
                                       domains[0], s.options());
    s.check(std::abs(est.refined - std::numbers::ln2) <= config.tol, "diag_1_2_linf", {{"refined", est.refined}});
  }

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + s.rng().index(3);
    const NormSpec a = random_norm(k, s.rng());
    const NormSpec b = random_norm(k, s.rng());
    const Matrix m = invertible_matrix(k, s.rng());
    const SampleDomain domain = unit_domain(k, std::min<std::size_t>(config.samples, 2000), s.rng().fork());
    const auto rep = precompose_invariance_check(a, b, m, domain);
    s.check(rep.invariant, "gl_precomposition_invariance",
            {{"a", a.describe()}, {"b", b.describe()}, {"original", rep.original}, {"pulled_back", rep.pulled_back}});
  }

  // Every signed permutation outside {+I, -I} moves one of the two separating
  // norms: sum_j j|x_j| detects the permutation part, and ||x||_1 + |x_i + x_j|
  // detects a sign difference between coordinates i and j.
  for (std::size_t k = 2; k <= 3; ++k) {
    const SampleDomain& domain = domains[k - 2];
    std::vector<double> weights;
    std::vector<std::vector<double>> axes;
    for (std::size_t j = 0; j < k; ++j) {
      weights.push_back(static_cast<double>(j + 1));
      axes.emplace_back(k, 0.0);
      axes.back()[j] = 1.0;
    }
    const NormSpec weighted = NormSpec::weighted_abs(weights, axes);
    for (const auto& [perm, signs] : signed_permutations(k)) {
      const bool identity_perm = std::is_sorted(perm.begin(), perm.end());
      const bool uniform_sign = std::all_of(signs.begin(), signs.end(), [&](int v) { return v == signs[0]; });
      if (identity_perm && uniform_sign) continue;
      const double c = std::exp(s.rng().uniform(-1.0, 1.0));
      Matrix a = signed_permutation(perm, signs);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a(i, j) *= c;
      NormSpec separating = weighted;
      if (identity_perm) {
        std::size_t other = 1;
        while (signs[other] == signs[0]) ++other;
        std::vector<double> w(k + 1, 1.0);
        std::vector<std::vector<double>> fs = axes;
        fs.emplace_back(k, 0.0);
        fs.back()[0] = 1.0;
        fs.back()[other] = 1.0;
        separating = NormSpec::weighted_abs(w, fs);
      }
      const auto est = estimate_distance(NormSpec::precomposed(a, separating), separating, domain, s.options());
      s.check(est.refined > 0.01, "separating_norm_moved",
              {{"k", k}, {"perm", perm}, {"signs", signs}, {"refined", est.refined}});
    }
  }

  // Dual norms: |1/p* - 1/q*| = |1/p - 1/q|, so sampled dual distances
  // should track the primal closed form. The 5% band needs about 1e4 inner
  // points, so smaller --samples values do not shrink this check.
  const std::size_t inner_count = std::max<std::size_t>(config.samples, 10000);
  const std::size_t outer_count = std::min<std::size_t>(config.samples, 200);
  for (std::size_t k = 2; k <= 4; ++k) {
    const SampleDomain inner = unit_domain(k, inner_count, s.rng().fork());
    const SampleDomain outer = unit_domain(k, outer_count, s.rng().fork());
    for (auto [p, q] : {std::pair{1.0, kInf}, std::pair{1.0, 2.0}, std::pair{2.0, kInf}}) {
      const NormSpec a = NormSpec::pnorm(p);
      const NormSpec b = NormSpec::pnorm(q);
      const double primal = *distance_closed_form(a, b, k);
      const double dual = estimate_dual_distance(a, b, inner, outer);
      s.check(std::abs(dual - primal) <= 0.05 * primal, "dual_distance_tracks_primal",
              {{"p", num(p)}, {"q", num(q)}, {"k", k}, {"dual", dual}, {"primal", primal}});
    }
  }
  return s.finish();
}

// pipeline ---------------------------------------------------------------------

SuiteResult suite_pipeline(const RunConfig& config) {
  Suite s("pipeline", config);
  Rng& rng = s.rng();

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.index(4);
    const std::size_t m = 2 + rng.index(pair_count(n) - 1);
    const FiniteMetric x = random_metric(m, rng);
    const auto rep = embed_into_Sn(x, n);
    json w{{"n", n}, {"m", m}, {"min_ratio", rep.min_ratio}, {"max_ratio", rep.max_ratio}};
    s.check(rep.membership_ok, "membership", w);
    s.check(rep.min_ratio >= 1.0 - kExact && rep.max_ratio <= 2.0 + kExact, "ratio_bounds", w);
    bool all_bases = true;
    const FiniteMetric rescaled = x.scaled(std::numbers::ln2 / x.diameter());
    for (std::size_t b = 0; b < m; ++b) all_bases = all_bases && frechet_image_membership(rescaled, n, b);
    s.check(all_bases, "membership_every_base", w);
  }

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(7);
    const FiniteMetric r = random_metric(n, rng);
    const auto base = rng.index(n);
    const auto v = frechet_embed(r, base);
    bool exact = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) exact = exact && chebyshev_distance(v[i], v[j]) == r(i, j);
    s.check(exact, "frechet_isometry", {{"n", n}, {"base", base}});
  }

  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t p = 1 + rng.index(6);
    const std::size_t q = p + 1 + rng.index(4);
    const auto a = pad_to_quotient(rng.gaussian_vector(p), q);
    const auto b = pad_to_quotient(rng.gaussian_vector(p), q);
    const double sup = chebyshev_distance(a, b);
    const double diam = padded_distance(a, b);
    s.check(sup <= diam + kExact && diam <= 2.0 * sup + kExact, "padding_bounds", {{"sup", sup}, {"diam", diam}});
  }
  {
    const std::vector<double> zero{0.0, 0.0};
    const double upper = padded_distance(pad_to_quotient(std::vector<double>{1.0, -1.0}, 3), pad_to_quotient(zero, 3));
    const double lower = padded_distance(pad_to_quotient(std::vector<double>{2.0, 0.0}, 3), pad_to_quotient(zero, 3));
    s.check(upper == 2.0, "padding_upper_bound_attained", {{"diam", upper}});
    s.check(lower == 2.0, "padding_lower_bound_attained", {{"diam", lower}});
    s.note("padding (1,-1) -> diameter 2 against sup 1: the padding map is not an isometry (expected)");
  }

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.index(5);
    const FiniteMetric r1 = random_metric(n, rng);
    const FiniteMetric r2 = random_metric(n, rng);
    const PsiPoint p1 = metric_to_psi(r1), p2 = metric_to_psi(r2);
    const double via_psi = padded_distance(p1.psi, p2.psi);
    const double direct = log_distortion(r1, r2);
    s.check(std::abs(via_psi - direct) <= kExact, "psi_conjugation", {{"psi", via_psi}, {"direct", direct}});
    const FiniteMetric back = psi_to_metric(p1);
    double err = 0.0;
    for (std::size_t i = 0; i < r1.pair_values().size(); ++i)
      err = std::max(err, std::abs(back.pair_values()[i] - r1.pair_values()[i]) / r1.pair_values()[i]);
    s.check(err <= kExact, "psi_roundtrip", {{"relative_error", err}});
  }

  // Three-point audit: the equilateral triangle of side log 2.
  {
    const FiniteMetric tri = discrete_metric(3).scaled(std::numbers::ln2);
    const auto rep = embed_into_Sn(tri, 3);
    const double l = std::numbers::ln2;
    const bool shape = rep.psi_images.size() == 3 && rep.psi_images[0].psi == std::vector<double>{l, l, 0.0} &&
                       rep.psi_images[1].psi == std::vector<double>{0.0, l, 0.0} &&
                       rep.psi_images[2].psi == std::vector<double>{l, 0.0, 0.0};
    s.check(shape, "three_point_images");
    s.check(rep.membership_ok, "three_point_membership");
    const bool counterexample = !rep.isometric && std::abs(rep.max_ratio - 2.0) <= kExact;
    s.check(counterexample, "three_point_isometry_counterexample",
            {{"min_ratio", rep.min_ratio}, {"max_ratio", rep.max_ratio}});
    if (counterexample)
      s.note("equilateral log 2 triangle: images of points 1 and 2 differ by (-log 2, log 2, 0), distance ratio 2; "
             "exact isometry fails (expected)");
    const bool unscaled = frechet_image_membership(discrete_metric(3), 3, 0);
    s.check(!unscaled, "diameter_above_log2_fails_membership");
  }
  return s.finish();
}

struct SuiteEntry {
  const char* name;
  SuiteResult (*run)(const RunConfig&);
};

constexpr SuiteEntry kSuites[] = {
    {"plp", suite_plp},         {"pskp", suite_pskp},         {"mixture", suite_mixture},
    {"rs1n", suite_rs1n},       {"apex", suite_apex},         {"diamnorm", suite_diamnorm},
    {"schoenberg", suite_schoenberg}, {"isometries", suite_isometries}, {"pipeline", suite_pipeline},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kSuites) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_suites(std::string_view name, const RunConfig& config) {
  if (!(config.tol > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "tol must be positive");
  if (config.refine_iters < 0) throw Error(ErrorCode::ParameterOutOfRange, "refine_iters must be nonnegative");
  std::vector<SuiteResult> out;
  for (const auto& e : kSuites)
    if (name == "all" || name == e.name) out.push_back(e.run(config));
  if (out.empty()) throw Error(ErrorCode::ParameterOutOfRange, "unknown suite '" + std::string(name) + "'");
  return out;
}

json suite_report(const std::vector<SuiteResult>& results, const RunConfig& config) {
  json suites = json::array();
  bool ok = true;
  for (const auto& r : results) {
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"check", f.check}, {"witness", f.witness}});
    suites.push_back({{"suite", r.suite},
                      {"seed", r.seed},
                      {"cases", r.cases},
                      {"ok", r.ok()},
                      {"failures", failures},
                      {"notes", r.notes}});
    ok = ok && r.ok();
  }
  return {{"seed", config.seed},
          {"samples", config.samples},
          {"refine_iters", config.refine_iters},
          {"tol", config.tol},
          {"ok", ok},
          {"suites", suites}};
}

}  // namespace normspace
