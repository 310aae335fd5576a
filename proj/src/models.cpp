// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/models.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "solcheck/curvature.hpp"
#include "solcheck/error.hpp"

namespace solcheck {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr double kAngleMargin = 0.5;

std::vector<std::vector<Expr>> diagonal_metric(const std::vector<std::string>& coords,
                                               const std::vector<std::string>& diag) {
  const std::size_t n = coords.size();
  std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = parse_expression(diag[i], coords);
  return g;
}

std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> v;
  for (int i = 1; i <= count; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

// Diagonal of a round metric of radius^2 rho in angles th1.., ph.
std::vector<std::string> round_diagonal(const std::vector<std::string>& angles, double rho) {
  std::vector<std::string> d;
  std::string prefix = format_number(rho);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    d.push_back(prefix);
    prefix += "*sin(" + angles[k] + ")^2";
  }
  return d;
}

void add_angles(ModelSpec& m, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) {
    const bool last = k + 1 == count;
    m.domain.push_back({0.0, last ? 2.0 * kPi : kPi});
    m.margins.push_back(last ? 0.0 : kAngleMargin);
  }
}

std::vector<std::string> sphere_angles(int k) {
  auto v = numbered("th", k - 1);
  v.push_back("ph");
  return v;
}

ModelSpec make_model(std::string name, std::vector<std::string> coords, const std::vector<std::string>& diag,
                     std::optional<std::string> f, std::optional<double> lambda,
                     std::vector<Interval> domain, std::vector<double> margins) {
  ModelSpec m;
  m.name = std::move(name);
  m.dimension = static_cast<int>(coords.size());
  m.metric = diagonal_metric(coords, diag);
  if (f) m.potential = parse_expression(*f, coords);
  m.lambda = lambda;
  m.coords = std::move(coords);
  m.domain = std::move(domain);
  m.margins = std::move(margins);
  return m;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;
  auto add = [&](ModelSpec m, bool shrinker, std::optional<double> ratio, std::vector<double> eigs,
                 std::string summary, std::optional<std::string> cls = std::nullopt) {
    m.expected_class = std::move(cls);
    validate_structure(m);
    cat.push_back({std::move(m), shrinker, ratio, std::move(eigs), std::move(summary)});
  };

  const auto xs = numbered("x", 4);
  add(make_model("gaussian4", xs, {"1", "1", "1", "1"}, "(x1^2+x2^2+x3^2+x4^2)/4", 0.5,
                 std::vector<Interval>(4, {-2.0, 2.0}), std::vector<double>(4, 0.0)),
      true, 0.0, {0, 0, 0, 0}, "flat R^4 with f = |x|^2/4", "Gaussian_R4");

  {
    ModelSpec m = cylinder_model(4);
    m.name = "cylinder_r1s3";
    add(std::move(m), true, 3.0, {0, 1, 1, 1}, "R x S^3, sphere radius 2, f = t^2/4", "RxS3");
  }
  {
    ModelSpec m = make_model("product_r2s2", {"x", "y", "th", "ph"}, {"1", "1", "2", "2*sin(th)^2"},
                             "(x^2+y^2)/4", 0.5, {{-2, 2}, {-2, 2}, {0, kPi}, {0, 2 * kPi}},
                             {0, 0, kAngleMargin, 0});
    add(std::move(m), true, 2.0, {0, 0, 1, 1}, "R^2 x S^2, sphere radius sqrt(2), f = (x^2+y^2)/4",
        "R2xS2");
  }
  add(sphere_model(4), true, 4.0, {1, 1, 1, 1}, "round S^4, radius sqrt(6), f = 0", "Einstein");
  for (int n : {3, 5}) {
    add(sphere_model(n), true, static_cast<double>(n), std::vector<double>(static_cast<std::size_t>(n), 1.0),
        "round S^" + std::to_string(n) + ", radius^2 = " + std::to_string(2 * (n - 1)) + ", f = 0");
    std::vector<double> eigs(static_cast<std::size_t>(n), 1.0);
    eigs[0] = 0.0;
    add(cylinder_model(n), true, static_cast<double>(n - 1), eigs,
        "R x S^" + std::to_string(n - 1) + ", radius^2 = " + std::to_string(2 * (n - 2)) + ", f = t^2/4");
  }

  const std::vector<std::string> txyz{"t", "x", "y", "z"};
  const std::string phi2 = "(1+t^2/10)^2";
  add(make_model("warped_test", txyz, {"1", phi2, phi2, phi2}, std::nullopt, std::nullopt,
                 std::vector<Interval>(4, {-1, 1}), std::vector<double>(4, 0.0)),
      false, std::nullopt, {}, "dt^2 + phi(t)^2 (dx^2+dy^2+dz^2), phi = 1 + t^2/10 (not a soliton)");
  add(make_model("warped3", {"t", "x", "y"}, {"1", phi2, phi2}, std::nullopt, std::nullopt,
                 std::vector<Interval>(3, {-1, 1}), std::vector<double>(3, 0.0)),
      false, std::nullopt, {}, "3-d warped product dt^2 + phi(t)^2 (dx^2+dy^2) (not a soliton)");
  add(make_model("warped_aniso", txyz,
                 {"1", phi2, "exp(2*t/5)*(1+x^2/8)", "(1+sin(t)/4)^2"}, std::nullopt, std::nullopt,
                 std::vector<Interval>(4, {-1, 1}), std::vector<double>(4, 0.0)),
      false, std::nullopt, {}, "anisotropic diagonal metric with nonzero Weyl and Cotton (not a soliton)");
  {
    // Flat plus a damped smooth symmetric bump; every entry of the bump is at
    // most 0.1 in size, so the matrix stays diagonally dominant on the box.
    ModelSpec m;
    m.name = "random_perturb";
    m.dimension = 4;
    m.coords = xs;
    const std::string damp = "exp(-(x1^2+x2^2+x3^2+x4^2)/4)";
    const char* bump[4][4] = {
        {"sin(0.7*x1+0.3*x2+0.2)", "cos(0.5*x3-0.4*x1)", "sin(0.6*x2*x4+0.1)", "cos(0.3*x1+0.8*x4)"},
        {nullptr, "cos(0.9*x2-0.2*x3)", "sin(0.4*x1+0.5*x3)", "sin(0.3*x2-0.6*x4+0.5)"},
        {nullptr, nullptr, "sin(0.5*x3+0.7*x4-0.3)", "cos(0.2*x2+0.6*x3)"},
        {nullptr, nullptr, nullptr, "cos(0.8*x4-0.3*x1+0.1)"}};
    m.metric.assign(4, std::vector<Expr>(4));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i; j < 4; ++j) {
        const std::string text = (i == j ? std::string("1+") : std::string()) + "0.1*" + bump[i][j] + "*" + damp;
        m.metric[i][j] = parse_expression(text, xs);
        m.metric[j][i] = m.metric[i][j];
      }
    }
    m.domain.assign(4, {-1, 1});
    m.margins.assign(4, 0.0);
    add(std::move(m), false, std::nullopt, {}, "flat R^4 plus a small smooth symmetric bump (not a soliton)");
  }
  std::sort(cat.begin(), cat.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return a.spec.name < b.spec.name;
  });
  return cat;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Expr parse_field_expr(const ojson& v, const std::string& where, const std::vector<std::string>& coords) {
  if (!v.is_string()) invalid(where + " must be an expression string");
  const std::string text = v.get<std::string>();
  try {
    return parse_expression(text, coords);
  } catch (const Error& e) {
    std::string msg = where + ": " + e.what();
    if (e.position() >= 0) msg += " (column " + std::to_string(e.position() + 1) + " of \"" + text + "\")";
    throw Error(ErrorCode::ParseError, msg);
  }
}

double number_field(const ojson& v, const std::string& where) {
  if (!v.is_number()) invalid(where + " must be a number");
  return v.get<double>();
}

// Cholesky at a handful of points in the sampling box.
void spot_check_positive(const ModelSpec& m) {
  const SamplePlan plan = sample_points(m, 16, 0);
  for (const Point& p : plan.points) {
    const int n = m.dimension;
    Eigen::MatrixXd g(n, n);
    try {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          g(i, j) = evaluate(m.metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
    } catch (const Error& e) {
      invalid(std::string("metric cannot be evaluated in the domain: ") + e.what());
    }
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) {
      std::string where;
      for (std::size_t i = 0; i < p.size(); ++i)
        where += (i ? ", " : "") + m.coords[i] + "=" + format_number(p[i]);
      invalid("metric is not positive definite at (" + where + ")");
    }
  }
}

}  // namespace

ModelSpec sphere_model(int n, double lambda) {
  if (n < 2) throw Error(ErrorCode::DimensionError, "sphere dimension must be >= 2");
  ModelSpec m;
  m.name = "sphere" + std::to_string(n);
  m.dimension = n;
  m.coords = sphere_angles(n);
  m.metric = diagonal_metric(m.coords, round_diagonal(m.coords, (n - 1) / lambda));
  m.potential = Expr();
  m.lambda = lambda;
  add_angles(m, static_cast<std::size_t>(n));
  return m;
}

ModelSpec cylinder_model(int n, double lambda) {
  if (n < 3) throw Error(ErrorCode::DimensionError, "cylinder dimension must be >= 3");
  ModelSpec m;
  m.name = "cylinder" + std::to_string(n);
  m.dimension = n;
  m.coords = {"t"};
  const auto angles = sphere_angles(n - 1);
  m.coords.insert(m.coords.end(), angles.begin(), angles.end());
  std::vector<std::string> diag{"1"};
  const auto round = round_diagonal(angles, (n - 2) / lambda);
  diag.insert(diag.end(), round.begin(), round.end());
  m.metric = diagonal_metric(m.coords, diag);
  m.potential = parse_expression(format_number(lambda / 2.0) + "*t^2", m.coords);
  m.lambda = lambda;
  m.domain.push_back({-2.0, 2.0});
  m.margins.push_back(0.0);
  add_angles(m, static_cast<std::size_t>(n - 1));
  return m;
}

const std::vector<CatalogEntry>& builtin_models() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry& builtin_entry(std::string_view name) {
  for (const auto& e : builtin_models())
    if (e.spec.name == name) return e;
  throw Error(ErrorCode::UnknownModel, "unknown model '" + std::string(name) + "'");
}

const ModelSpec& builtin_model(std::string_view name) { return builtin_entry(name).spec; }

ModelSpec parse_model(std::string_view json_text) {
  ojson j;
  try {
    j = ojson::parse(json_text.begin(), json_text.end());
  } catch (const ojson::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(json_text, byte);
    throw Error(ErrorCode::ParseError,
                "invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col),
                static_cast<int>(byte));
  }
  if (!j.is_object()) invalid("model file must hold a JSON object");
  for (const char* key : {"name", "dimension", "coordinates", "metric", "domain"})
    if (!j.contains(key)) invalid(std::string("missing field '") + key + "'");

  ModelSpec m;
  if (!j["name"].is_string()) invalid("'name' must be a string");
  m.name = j["name"].get<std::string>();
  if (!j["dimension"].is_number_integer()) invalid("'dimension' must be an integer");
  m.dimension = j["dimension"].get<int>();
  if (m.dimension < 2) invalid("dimension must be at least 2");
  if (!j["coordinates"].is_array()) invalid("'coordinates' must be an array");
  for (const auto& c : j["coordinates"]) {
    if (!c.is_string()) invalid("coordinate names must be strings");
    m.coords.push_back(c.get<std::string>());
  }
  if (static_cast<int>(m.coords.size()) != m.dimension) invalid("coordinate count differs from dimension");
  {
    // Names are checked before any expression is parsed against them.
    ModelSpec probe = m;
    probe.metric.assign(m.coords.size(), std::vector<Expr>(m.coords.size()));
    probe.domain.assign(m.coords.size(), {0, 0});
    validate_structure(probe);
  }
  const auto& rows = j["metric"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != m.dimension)
    invalid("'metric' must be an array of " + std::to_string(m.dimension) + " rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != rows.size())
      invalid("metric row " + std::to_string(i) + " must have " + std::to_string(rows.size()) + " entries");
    std::vector<Expr> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      row.push_back(parse_field_expr(rows[i][k], "metric[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                                     m.coords));
    m.metric.push_back(std::move(row));
  }
  if (j.contains("potential") && !j["potential"].is_null())
    m.potential = parse_field_expr(j["potential"], "potential", m.coords);
  if (j.contains("lambda") && !j["lambda"].is_null()) m.lambda = number_field(j["lambda"], "lambda");

  const auto& dom = j["domain"];
  if (!dom.is_object()) invalid("'domain' must map coordinate names to [lo, hi]");
  for (const auto& [key, _] : dom.items())
    if (std::find(m.coords.begin(), m.coords.end(), key) == m.coords.end())
      invalid("domain names unknown coordinate '" + key + "'");
  for (const auto& c : m.coords) {
    if (!dom.contains(c)) invalid("domain is missing coordinate '" + c + "'");
    const auto& iv = dom[c];
    if (!iv.is_array() || iv.size() != 2) invalid("domain of '" + c + "' must be [lo, hi]");
    m.domain.push_back({number_field(iv[0], "domain lower bound"), number_field(iv[1], "domain upper bound")});
  }
  m.margins.assign(m.coords.size(), 0.0);
  if (j.contains("margins") && !j["margins"].is_null()) {
    const auto& mg = j["margins"];
    if (!mg.is_object()) invalid("'margins' must map coordinate names to numbers");
    for (const auto& [key, val] : mg.items()) {
      const auto it = std::find(m.coords.begin(), m.coords.end(), key);
      if (it == m.coords.end()) invalid("margins name unknown coordinate '" + key + "'");
      m.margins[static_cast<std::size_t>(it - m.coords.begin())] = number_field(val, "margin");
    }
  }
  validate_structure(m);
  try {
    sample_points(m, 1, 0);
  } catch (const Error&) {
    invalid("margins leave no room in the domain");
  }
  spot_check_positive(m);
  return m;
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string model_to_json(const ModelSpec& m) {
  ojson j;
  j["name"] = m.name;
  j["dimension"] = m.dimension;
  j["coordinates"] = m.coords;
  ojson rows = ojson::array();
  for (const auto& row : m.metric) {
    ojson r = ojson::array();
    for (const auto& e : row) r.push_back(to_string(e, m.coords));
    rows.push_back(std::move(r));
  }
  j["metric"] = std::move(rows);
  j["potential"] = m.potential ? ojson(to_string(*m.potential, m.coords)) : ojson(nullptr);
  j["lambda"] = m.lambda ? ojson(*m.lambda) : ojson(nullptr);
  ojson dom = ojson::object();
  ojson mg = ojson::object();
  for (std::size_t i = 0; i < m.coords.size(); ++i) {
    dom[m.coords[i]] = {m.domain[i].lo, m.domain[i].hi};
    mg[m.coords[i]] = i < m.margins.size() ? m.margins[i] : 0.0;
  }
  j["domain"] = std::move(dom);
  j["margins"] = std::move(mg);
  return j.dump(2) + "\n";
}

bool equivalent(const ModelSpec& a, const ModelSpec& b) {
  if (a.name != b.name || a.dimension != b.dimension || a.coords != b.coords) return false;
  if (a.metric.size() != b.metric.size()) return false;
  for (std::size_t i = 0; i < a.metric.size(); ++i) {
    if (a.metric[i].size() != b.metric[i].size()) return false;
    for (std::size_t k = 0; k < a.metric[i].size(); ++k)
      if (!(a.metric[i][k] == b.metric[i][k])) return false;
  }
  if (a.potential.has_value() != b.potential.has_value()) return false;
  if (a.potential && !(*a.potential == *b.potential)) return false;
  if (a.lambda != b.lambda) return false;
  if (a.domain.size() != b.domain.size()) return false;
  for (std::size_t i = 0; i < a.domain.size(); ++i)
    if (a.domain[i].lo != b.domain[i].lo || a.domain[i].hi != b.domain[i].hi) return false;
  auto margin = [](const ModelSpec& m, std::size_t i) { return i < m.margins.size() ? m.margins[i] : 0.0; };
  for (std::size_t i = 0; i < a.domain.size(); ++i)
    if (margin(a, i) != margin(b, i)) return false;
  return true;
}

ModelSpec resolve_model(const std::string& selector) {
  for (const auto& e : builtin_models())
    if (e.spec.name == selector) return e.spec;
  const bool looks_like_path = selector.find('/') != std::string::npos ||
                               (selector.size() > 5 && selector.substr(selector.size() - 5) == ".json");
  if (!looks_like_path && !std::ifstream(selector))
    throw Error(ErrorCode::UnknownModel, "'" + selector + "' is neither a builtin model nor a readable file");
  return load_model(selector);
}

TensorJet soliton_residual(const ModelSpec& m, std::span<const double> p) {
  if (!m.potential || !m.lambda)
    throw Error(ErrorCode::MissingPotential, "model '" + m.name + "' has no potential");
  const Connection conn = levi_civita(m, p, 2);
  const CurvatureBundle b = curvature_bundle(conn);
  const TensorJet hess = hessian(scalar_field(*m.potential, p, 2), conn.christoffel);
  TensorJet res = b.ricci + hess;
  res -= *m.lambda * conn.metric.truncated(0);
  return res;
}

SamplePlan sample_points(const ModelSpec& m, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw Error(ErrorCode::EmptyDomain, "sample count must be at least 1");
  SamplePlan plan;
  plan.count = count;
  plan.seed = seed;
  for (std::size_t i = 0; i < m.domain.size(); ++i) {
    const double g = i < m.margins.size() ? m.margins[i] : 0.0;
    const Interval iv{m.domain[i].lo + g, m.domain[i].hi - g};
    if (!(iv.lo <= iv.hi))
      throw Error(ErrorCode::EmptyDomain, "margins exceed the domain of '" + m.coords[i] + "'");
    plan.box.push_back(iv);
  }
  if (count == 1) {
    Point c;
    for (const auto& iv : plan.box) c.push_back(0.5 * (iv.lo + iv.hi));
    plan.points.push_back(std::move(c));
    return plan;
  }
  std::mt19937_64 rng(seed);
  plan.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Point p;
    for (const auto& iv : plan.box) {
      // 53 random bits; fixed mapping keeps plans identical across standard libraries.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      p.push_back(iv.lo + u * (iv.hi - iv.lo));
    }
    plan.points.push_back(std::move(p));
  }
  return plan;
}

}  // namespace solcheck
