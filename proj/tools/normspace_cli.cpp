// normspace: distances, embeddings and verification suites for norms on R^k
// and metrics on finite sets, each modulo dilation.
//
// Exit codes: 0 success, 1 property failure (verify), 2 usage or validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normspace/embeddings.hpp"
#include "normspace/error.hpp"
#include "normspace/estimate.hpp"
#include "normspace/io.hpp"
#include "normspace/metric.hpp"
#include "normspace/norms.hpp"
#include "normspace/sample_domain.hpp"
#include "normspace/verify.hpp"

namespace {

using namespace normspace;
using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  RunConfig run;
  std::string format = "json";
  std::string output;

  // Sample domain.
  std::size_t k = 0;
  std::string reference;
  double radius = 1.0;
  std::vector<double> center;

  // Inputs.
  std::string spec_a, spec_b;
  std::string metric_a, metric_b;
  bool isometry = false;
  std::string embed_kind;
  std::string input;
  std::size_t n = 0;
  std::size_t base = 0;
  std::string suite = "all";
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot write '" + opt.output + "'");
  out << text;
}

void emit_json(const Options& opt, const json& j) { emit(opt, j.dump(2) + "\n"); }

SampleDomain build_domain(const Options& opt, std::size_t k) {
  if (!opt.center.empty()) return SampleDomain::sample(OffCenterSphere{opt.center}, k, opt.run.samples, opt.run.seed);
  NormSpec ref = opt.reference.empty() ? NormSpec::pnorm(2.0) : io::load_norm(opt.reference);
  return SampleDomain::sample(NormSphere{std::move(ref), opt.radius}, k, opt.run.samples, opt.run.seed);
}

std::size_t resolve_dimension(const Options& opt, const NormSpec& a, const NormSpec& b) {
  if (opt.k != 0) return opt.k;
  if (auto k = a.fixed_dimension()) return *k;
  if (auto k = b.fixed_dimension()) return *k;
  if (!opt.center.empty()) return opt.center.size();
  throw Error(ErrorCode::BadDimensions, "dimension not fixed by the specs; pass --k");
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
  return out + "\n";
}

std::string csv_number(const json& j) { return j.is_null() ? "" : j.dump(); }

int cmd_norm_dist(const Options& opt) {
  const NormSpec a = io::load_norm(opt.spec_a);
  const NormSpec b = io::load_norm(opt.spec_b);
  const std::size_t k = resolve_dimension(opt, a, b);
  const SampleDomain domain = build_domain(opt, k);
  const auto est = estimate_distance(a, b, domain, {opt.run.refine_iters, 1e-10, opt.run.threads});
  const auto closed = distance_closed_form(a, b, k);
  json out = io::estimate_to_json(est);
  out["k"] = k;
  out["closed_form"] = closed ? json(*closed) : json(nullptr);
  if (opt.format == "csv") {
    emit(opt, csv_line({"k", "lower_bound", "refined", "closed_form", "samples_used", "seed"}) +
                  csv_line({out["k"].dump(), out["lower_bound"].dump(), out["refined"].dump(),
                            csv_number(out["closed_form"]), out["samples_used"].dump(), out["seed"].dump()}));
  } else {
    emit_json(opt, out);
  }
  return 0;
}

int cmd_metric_dist(const Options& opt) {
  const FiniteMetric r1 = io::load_metric(opt.metric_a);
  const FiniteMetric r2 = io::load_metric(opt.metric_b);
  if (r1.size() != r2.size())
    throw Error(ErrorCode::DimensionMismatch, "metrics have " + std::to_string(r1.size()) + " and " +
                                                  std::to_string(r2.size()) + " points");
  json out{{"n", r1.size()}, {"distance", log_distortion(r1, r2)}};
  const auto scale = are_proportional(r1, r2);
  out["proportional"] = scale.has_value();
  out["scale"] = scale ? json(*scale) : json(nullptr);
  if (opt.isometry) {
    const auto sigma = brute_force_isometry(r1, r2);
    out["isometric"] = sigma.has_value();
    out["isometry"] = sigma ? json(*sigma) : json(nullptr);
  }
  if (opt.format == "csv") {
    emit(opt, csv_line({"n", "distance", "proportional", "scale"}) +
                  csv_line({out["n"].dump(), out["distance"].dump(), out["proportional"].dump(),
                            csv_number(out["scale"])}));
  } else {
    emit_json(opt, out);
  }
  return 0;
}

int cmd_embed(const Options& opt) {
  const FiniteMetric r = io::load_metric(opt.input);
  const bool csv = opt.format == "csv";
  if (opt.embed_kind == "frechet") {
    const auto coords = frechet_embed(r, opt.base);
    bool exact = true;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j) exact = exact && chebyshev_distance(coords[i], coords[j]) == r(i, j);
    if (csv) emit(opt, io::rows_to_csv(coords));
    else emit_json(opt, {{"base", opt.base}, {"coords", coords}, {"sup_norm_exact", exact}});
  } else if (opt.embed_kind == "schoenberg") {
    const auto rep = euclidean_embed(r, opt.base, opt.run.tol);
    if (csv) emit(opt, io::rows_to_csv(rep.coords));
    else emit_json(opt, io::schoenberg_to_json(rep));
  } else if (opt.embed_kind == "sn") {
    if (opt.n == 0) throw Error(ErrorCode::ParameterOutOfRange, "embed sn needs --n");
    const auto rep = embed_into_Sn(r, opt.n);
    if (csv) {
      std::vector<std::vector<double>> rows;
      for (const auto& p : rep.psi_images) rows.push_back(p.psi);
      emit(opt, io::rows_to_csv(rows));
    } else {
      emit_json(opt, io::embedding_to_json(rep));
    }
  } else {
    const PsiPoint p = metric_to_psi(r);
    if (csv) emit(opt, io::rows_to_csv({p.psi}));
    else emit_json(opt, io::psi_to_json(p));
  }
  return 0;
}

int cmd_sample_domain(const Options& opt) {
  std::size_t k = opt.k != 0 ? opt.k : opt.center.size();
  if (k == 0) throw Error(ErrorCode::BadDimensions, "sample-domain needs --k or --center");
  const SampleDomain domain = build_domain(opt, k);
  if (opt.format == "csv") emit(opt, io::rows_to_csv(domain.points()));
  else emit_json(opt, io::domain_to_json(domain));
  return 0;
}

int cmd_verify(const Options& opt) {
  const auto results = run_suites(opt.suite, opt.run);
  bool ok = true;
  for (const auto& r : results) {
    std::fprintf(stderr, "%-10s %-4s cases=%zu failures=%zu seed=%llu time=%.2fs\n", r.suite.c_str(),
                 r.ok() ? "ok" : "FAIL", r.cases, r.failures.size(), static_cast<unsigned long long>(r.seed),
                 r.wall_seconds);
    ok = ok && r.ok();
  }
  const json report = suite_report(results, opt.run);
  if (opt.format == "csv") {
    std::string text = csv_line({"suite", "cases", "failures", "ok"});
    for (const auto& r : results)
      text += csv_line({r.suite, std::to_string(r.cases), std::to_string(r.failures.size()), r.ok() ? "true" : "false"});
    emit(opt, text);
  } else {
    emit_json(opt, report);
  }
  return ok ? 0 : kExitFailure;
}

void add_run_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.run.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--samples", opt.run.samples, "random sample-domain points")->capture_default_str();
  cmd->add_option("--refine-iters", opt.run.refine_iters, "hill-climbing sweeps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--tol", opt.run.tol, "tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--threads", opt.run.threads, "threads for sample evaluation")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--output", opt.output, "output path (default stdout)");
}

void add_domain_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--k", opt.k, "dimension");
  cmd->add_option("--reference", opt.reference, "NormSpec JSON of the sphere's norm (default l2)");
  cmd->add_option("--radius", opt.radius, "sphere radius")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--center", opt.center, "off-center sphere center, comma separated")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Distances and embeddings for norms and finite metrics modulo dilation"};
  app.require_subcommand(1);

  auto* norm = app.add_subcommand("norm-dist", "estimate the distance between two norm classes");
  norm->add_option("spec_a", opt.spec_a, "NormSpec JSON")->required()->check(CLI::ExistingFile);
  norm->add_option("spec_b", opt.spec_b, "NormSpec JSON")->required()->check(CLI::ExistingFile);
  add_run_flags(norm, opt);
  add_domain_flags(norm, opt);

  auto* metric = app.add_subcommand("metric-dist", "log-distortion between two metrics on the same points");
  metric->add_option("m1", opt.metric_a, "metric JSON or CSV")->required()->check(CLI::ExistingFile);
  metric->add_option("m2", opt.metric_b, "metric JSON or CSV")->required()->check(CLI::ExistingFile);
  metric->add_flag("--isometry", opt.isometry, "search for an isometry (n <= 9)");
  add_run_flags(metric, opt);

  auto* embed = app.add_subcommand("embed", "embed a finite metric");
  embed->add_option("kind", opt.embed_kind, "frechet | schoenberg | sn | psi")
      ->required()
      ->check(CLI::IsMember({"frechet", "schoenberg", "sn", "psi"}));
  embed->add_option("input", opt.input, "metric JSON or CSV")->required()->check(CLI::ExistingFile);
  embed->add_option("--n", opt.n, "target point count for sn");
  embed->add_option("--base", opt.base, "base point index")->capture_default_str();
  add_run_flags(embed, opt);

  auto* domain = app.add_subcommand("sample-domain", "sample points on a sphere");
  add_run_flags(domain, opt);
  add_domain_flags(domain, opt);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite", opt.suite, "suite name or all")->check(CLI::IsMember(suites))->capture_default_str();
  add_run_flags(verify, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*norm) return cmd_norm_dist(opt);
    if (*metric) return cmd_metric_dist(opt);
    if (*embed) return cmd_embed(opt);
    if (*domain) return cmd_sample_domain(opt);
    return cmd_verify(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.witness().empty()) {
      std::cerr << " [witness";
      for (std::size_t w : e.witness()) std::cerr << ' ' << w;
      std::cerr << ']';
    }
    std::cerr << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
