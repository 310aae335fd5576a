// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/inspect.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "solcheck/curvature.hpp"
#include "solcheck/divchain.hpp"
#include "solcheck/error.hpp"
#include "solcheck/models.hpp"

namespace solcheck {

namespace {

int metric_order_for(std::string_view name) {
  if (name == "cotton" || name == "dtensor") return 3;
  if (name == "bach") return 4;
  if (name.size() >= 4 && name.substr(0, 3) == "div") return (name[3] - '0') + 2;
  return 2;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

nlohmann::ordered_json nested(const std::vector<double>& v, int dim, int rank, std::size_t offset) {
  if (rank == 0) return v[offset];
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::size_t stride = 1;
  for (int r = 1; r < rank; ++r) stride *= static_cast<std::size_t>(dim);
  for (int a = 0; a < dim; ++a) arr.push_back(nested(v, dim, rank - 1, offset + static_cast<std::size_t>(a) * stride));
  return arr;
}

}  // namespace

const std::vector<std::string>& tensor_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"bach", "cotton", "dtensor", "ricci", "riemann", "scalar", "soliton_residual", "weyl"};
    for (int k = 1; k <= 4; ++k) {
      n.push_back("div" + std::to_string(k) + "rm");
      n.push_back("div" + std::to_string(k) + "w");
    }
    std::sort(n.begin(), n.end());
    return n;
  }();
  return names;
}

TensorDump dump_tensor(const ModelSpec& m, std::string_view tensor, std::span<const double> p) {
  const auto& names = tensor_names();
  if (std::find(names.begin(), names.end(), tensor) == names.end())
    throw Error(ErrorCode::UnknownTensor, "unknown tensor '" + std::string(tensor) + "'");
  if (p.size() != static_cast<std::size_t>(m.dimension))
    throw Error(ErrorCode::DimensionError, "point has " + std::to_string(p.size()) + " coordinates, model has " +
                                               std::to_string(m.dimension));
  if (!in_domain(m, p)) throw Error(ErrorCode::DomainError, "point lies outside the model domain");

  PointGeometry geo(m, p, metric_order_for(tensor));
  TensorJet t;
  if (tensor == "riemann") t = geo.riemann();
  else if (tensor == "ricci") t = geo.ricci();
  else if (tensor == "scalar") t = geo.scalar();
  else if (tensor == "weyl") t = geo.weyl();
  else if (tensor == "cotton") t = cotton_tensor(geo.grad_ricci(), geo.grad_scalar(), geo.metric());
  else if (tensor == "bach") t = bach_tensor(geo.weyl(), geo.ricci(), geo.connection());
  else if (tensor == "dtensor") t = d_tensor(geo.curvature(), geo.grad_scalar(), geo.df(), geo.metric());
  else if (tensor == "soliton_residual") t = soliton_residual(m, p);
  else {
    const int k = tensor[3] - '0';
    const Family fam = tensor.substr(4) == "rm" ? Family::Rm : Family::W;
    t = geo.chain(fam).level(k);
  }

  TensorDump d;
  d.tensor = std::string(tensor);
  d.model = m.name;
  d.coords = m.coords;
  d.point.assign(p.begin(), p.end());
  d.dimension = m.dimension;
  d.rank = t.rank();
  d.values.reserve(t.component_count());
  for (std::size_t k = 0; k < t.component_count(); ++k) d.values.push_back(t.value_at(k));
  d.norm_sq = geo.in_frame(t).norm_sq();
  return d;
}

Point parse_point(const ModelSpec& m, std::string_view text) {
  Point p(static_cast<std::size_t>(m.dimension), 0.0);
  std::vector<bool> seen(p.size(), false);
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string item = trim(text.substr(start, end - start));
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ValidationError, "expected name=value in '" + item + "'");
    const std::string name = trim(std::string_view(item).substr(0, eq));
    const std::string val = trim(std::string_view(item).substr(eq + 1));
    const auto it = std::find(m.coords.begin(), m.coords.end(), name);
    if (it == m.coords.end()) throw Error(ErrorCode::ValidationError, "unknown coordinate '" + name + "'");
    const auto idx = static_cast<std::size_t>(it - m.coords.begin());
    if (seen[idx]) throw Error(ErrorCode::ValidationError, "coordinate '" + name + "' assigned twice");
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty() || !std::isfinite(x))
      throw Error(ErrorCode::ValidationError, "bad value '" + val + "' for coordinate '" + name + "'");
    p[idx] = x;
    seen[idx] = true;
    start = end + 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw Error(ErrorCode::ValidationError, "coordinate '" + m.coords[i] + "' not assigned");
  return p;
}

std::string render_dump_text(const TensorDump& d, double threshold) {
  std::ostringstream os;
  os << d.tensor << " on " << d.model << " at (";
  for (std::size_t i = 0; i < d.point.size(); ++i)
    os << (i ? ", " : "") << d.coords[i] << "=" << format_number(d.point[i]);
  os << ")\n";
  std::size_t shown = 0;
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    if (!(std::abs(d.values[k]) > threshold)) continue;
    os << d.tensor;
    if (d.rank > 0) {
      os << "[";
      std::size_t rest = k;
      std::vector<int> idx(static_cast<std::size_t>(d.rank));
      for (int s = d.rank - 1; s >= 0; --s) {
        idx[static_cast<std::size_t>(s)] = static_cast<int>(rest % static_cast<std::size_t>(d.dimension));
        rest /= static_cast<std::size_t>(d.dimension);
      }
      for (int s = 0; s < d.rank; ++s) os << (s ? "," : "") << d.coords[static_cast<std::size_t>(idx[static_cast<std::size_t>(s)])];
      os << "]";
    }
    os << " = " << format_number(d.values[k]) << "\n";
    ++shown;
  }
  if (!shown) os << "all components zero (threshold " << format_number(threshold) << ")\n";
  os << "norm_sq = " << format_number(d.norm_sq) << "\n";
  return os.str();
}

std::string render_dump_json(const TensorDump& d) {
  nlohmann::ordered_json j;
  j["tensor"] = d.tensor;
  j["model"] = d.model;
  j["point"] = d.point;
  j["dimension"] = d.dimension;
  j["rank"] = d.rank;
  j["components"] = nested(d.values, d.dimension, d.rank, 0);
  j["norm_sq"] = d.norm_sq;
  return j.dump(2) + "\n";
}

}  // namespace solcheck
