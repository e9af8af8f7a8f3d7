#include "normspace/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "normspace/error.hpp"

namespace normspace::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object()) parse_fail("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) parse_fail(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "Infinity")) return kInf;
  parse_fail(std::string("expected a number for ") + what);
}

double number_field(const json& j, const char* name) { return number(field(j, name), name); }

std::size_t index_value(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(std::string("expected a nonnegative integer for ") + what);
  return j.get<std::size_t>();
}

std::vector<double> vector_value(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string("expected an array for ") + what);
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

std::vector<std::vector<double>> rows_value(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string("expected an array of rows for ") + what);
  std::vector<std::vector<double>> out;
  for (const auto& row : j) out.push_back(vector_value(row, what));
  return out;
}

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json matrix_json(const Matrix& m) { return json(m.to_rows()); }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

json metric_to_json(const FiniteMetric& r) {
  json d = json::array();
  const auto values = r.pair_values();
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const auto [i, j] = pair_at(r.size(), idx);
    d.push_back(json::array({i, j, values[idx]}));
  }
  return json{{"n", r.size()}, {"d", d}};
}

FiniteMetric metric_from_json(const json& j) {
  const std::size_t n = index_value(field(j, "n"), "n");
  if (n < 2) throw Error(ErrorCode::BadDimensions, "a metric needs n >= 2");
  const json& d = field(j, "d");
  if (!d.is_array()) parse_fail("\"d\" must be an array of [i, j, value]");
  std::vector<double> values(pair_count(n), std::nan(""));
  std::vector<bool> seen(values.size(), false);
  for (const auto& entry : d) {
    if (!entry.is_array() || entry.size() != 3) parse_fail("each entry of \"d\" must be [i, j, value]");
    std::size_t a = index_value(entry[0], "i");
    std::size_t b = index_value(entry[1], "j");
    if (a == b || a >= n || b >= n) parse_fail("pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    if (a > b) std::swap(a, b);
    const std::size_t idx = pair_index(n, a, b);
    if (seen[idx]) parse_fail("pair (" + std::to_string(a) + "," + std::to_string(b) + ") listed twice");
    seen[idx] = true;
    values[idx] = number(entry[2], "distance");
  }
  for (std::size_t idx = 0; idx < seen.size(); ++idx) {
    if (!seen[idx]) {
      const auto [a, b] = pair_at(n, idx);
      parse_fail("pair (" + std::to_string(a) + "," + std::to_string(b) + ") missing");
    }
  }
  return FiniteMetric::from_pairs(n, std::move(values));
}

FiniteMetric metric_from_csv(std::string_view text) {
  std::vector<std::vector<double>> table;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      if (first == std::string::npos) parse_fail("empty CSV cell");
      const std::string trimmed = cell.substr(first, last - first + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
      if (ec != std::errc() || ptr != trimmed.data() + trimmed.size()) parse_fail("bad CSV number '" + trimmed + "'");
      row.push_back(v);
    }
    table.push_back(std::move(row));
  }
  return validate_metric(table);
}

FiniteMetric load_metric(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return metric_from_csv(text);
  return metric_from_json(parse_json(text));
}

json norm_to_json(const NormSpec& spec) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, PNorm>) {
          return {{"kind", "pnorm"}, {"p", number_json(node.p)}};
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          return {{"kind", "perturbed"}, {"p", number_json(node.p)}, {"q", node.q}, {"axis", node.axis}};
        } else if constexpr (std::is_same_v<T, WeightedAbs>) {
          json terms = json::array();
          for (std::size_t i = 0; i < node.weights.size(); ++i)
            terms.push_back({{"w", node.weights[i]}, {"a", node.functionals[i]}});
          return {{"kind", "weighted_abs"}, {"terms", terms}};
        } else if constexpr (std::is_same_v<T, Mixture>) {
          json atoms = json::array();
          for (std::size_t i = 0; i < node.exponents.size(); ++i)
            atoms.push_back({{"p", node.exponents[i]}, {"m", node.masses[i]}});
          return {{"kind", "mixture"}, {"atoms", atoms}};
        } else if constexpr (std::is_same_v<T, Precomposed>) {
          return {{"kind", "precomposed"}, {"A", matrix_json(node.matrix)}, {"inner", norm_to_json(node.inner)}};
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return {{"kind", "scaled"}, {"c", node.factor}, {"inner", norm_to_json(node.inner)}};
        } else {
          return {{"kind", "sum"}, {"left", norm_to_json(node.left)}, {"right", norm_to_json(node.right)}};
        }
      },
      spec.node().value);
}

NormSpec norm_from_json(const json& j) {
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) parse_fail("\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "pnorm") return NormSpec::pnorm(number_field(j, "p"));
  if (kind == "perturbed")
    return NormSpec::perturbed(number_field(j, "p"), number_field(j, "q"), index_value(field(j, "axis"), "axis"));
  if (kind == "weighted_abs") {
    const json& terms = field(j, "terms");
    if (!terms.is_array()) parse_fail("\"terms\" must be an array");
    std::vector<double> weights;
    std::vector<std::vector<double>> functionals;
    for (const auto& t : terms) {
      weights.push_back(number_field(t, "w"));
      functionals.push_back(vector_value(field(t, "a"), "a"));
    }
    return NormSpec::weighted_abs(std::move(weights), std::move(functionals));
  }
  if (kind == "mixture") {
    const json& atoms = field(j, "atoms");
    if (!atoms.is_array()) parse_fail("\"atoms\" must be an array");
    std::vector<double> exponents;
    std::vector<double> masses;
    for (const auto& a : atoms) {
      exponents.push_back(number_field(a, "p"));
      masses.push_back(number_field(a, "m"));
    }
    return NormSpec::mixture(std::move(exponents), std::move(masses));
  }
  if (kind == "precomposed")
    return NormSpec::precomposed(Matrix::from_rows(rows_value(field(j, "A"), "A")), norm_from_json(field(j, "inner")));
  if (kind == "scaled") return NormSpec::scaled(number_field(j, "c"), norm_from_json(field(j, "inner")));
  if (kind == "sum") return NormSpec::sum(norm_from_json(field(j, "left")), norm_from_json(field(j, "right")));
  parse_fail("unknown norm kind '" + kind + "'");
}

NormSpec load_norm(const std::string& path) { return norm_from_json(parse_json(read_file(path))); }

json domain_to_json(const SampleDomain& domain) {
  json kind = std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NormSphere>)
          return {{"type", "norm_sphere"}, {"reference", norm_to_json(k.reference)}, {"radius", k.radius}};
        else
          return {{"type", "off_center"}, {"center", k.center}};
      },
      domain.kind());
  return {{"k", domain.dimension()},
          {"kind", kind},
          {"seed", domain.seed()},
          {"count", domain.requested_count()},
          {"points", domain.points()}};
}

SampleDomain domain_from_json(const json& j) {
  const std::size_t k = index_value(field(j, "k"), "k");
  const json& kind = field(j, "kind");
  const json& type = field(kind, "type");
  auto make_sphere = [&]() -> SphereKind {
    if (type == "norm_sphere") return NormSphere{norm_from_json(field(kind, "reference")), number_field(kind, "radius")};
    if (type == "off_center") return OffCenterSphere{vector_value(field(kind, "center"), "center")};
    parse_fail("unknown sphere type");
  };
  SphereKind sphere = make_sphere();
  const json& seed = field(j, "seed");
  if (!seed.is_number_unsigned()) parse_fail("\"seed\" must be an unsigned integer");
  return SampleDomain::from_points(std::move(sphere), k, rows_value(field(j, "points"), "points"),
                                   seed.get<std::uint64_t>(), index_value(field(j, "count"), "count"));
}

json quotient_to_json(const QuotientFunction& f) {
  return {{"labels", f.base().labels()}, {"values", f.base().values()}, {"anchor", f.anchor()}};
}

QuotientFunction quotient_from_json(const json& j) {
  const json& labels = field(j, "labels");
  if (!labels.is_array()) parse_fail("\"labels\" must be an array");
  std::vector<std::string> names;
  for (const auto& l : labels) {
    if (!l.is_string()) parse_fail("labels must be strings");
    names.push_back(l.get<std::string>());
  }
  const json& anchor = field(j, "anchor");
  if (!anchor.is_string()) parse_fail("\"anchor\" must be a string");
  // Any representative is accepted; the stored one vanishes at the anchor.
  return kuratowski_section(RealFunction(std::move(names), vector_value(field(j, "values"), "values")),
                            anchor.get<std::string>());
}

json psi_to_json(const PsiPoint& p) { return {{"n", p.n}, {"psi", p.psi}}; }

PsiPoint psi_from_json(const json& j) {
  PsiPoint p{index_value(field(j, "n"), "n"), vector_value(field(j, "psi"), "psi")};
  if (p.n < 2 || p.psi.size() != pair_count(p.n)) throw Error(ErrorCode::BadDimensions, "psi needs n(n-1)/2 entries");
  return p;
}

json estimate_to_json(const NormDistanceEstimate& e) {
  return {{"lower_bound", e.lower_bound}, {"refined", e.refined},       {"arg_max", e.arg_max},
          {"arg_min", e.arg_min},         {"samples_used", e.samples_used}, {"seed", e.seed}};
}

json schoenberg_to_json(const SchoenbergReport& r) {
  json out{{"base", r.base},
           {"A", matrix_json(r.matrix)},
           {"eigenvalues", r.eigenvalues},
           {"threshold", r.threshold},
           {"embeddable", r.embeddable},
           {"rank", r.rank},
           {"coords", r.coords},
           {"residual", r.residual}};
  out["negative_witness"] = r.negative_witness ? json(*r.negative_witness) : json(nullptr);
  return out;
}

json embedding_to_json(const EmbeddingReport& r) {
  json images = json::array();
  for (const auto& m : r.images) images.push_back(metric_to_json(m));
  json psi = json::array();
  for (const auto& p : r.psi_images) psi.push_back(p.psi);
  json table = json::array();
  for (const auto& row : r.pair_table)
    table.push_back({{"a", row.a}, {"b", row.b}, {"source", row.source}, {"image", row.image}, {"ratio", row.ratio}});
  return {{"n", r.n},
          {"scale", r.scale},
          {"membership_ok", r.membership_ok},
          {"isometric", r.isometric},
          {"min_ratio", r.min_ratio},
          {"max_ratio", r.max_ratio},
          {"psi_images", psi},
          {"images", images},
          {"pair_table", table}};
}

std::string rows_to_csv(const std::vector<std::vector<double>>& rows) {
  std::string out;
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, row[i]);
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

}  // namespace normspace::io
