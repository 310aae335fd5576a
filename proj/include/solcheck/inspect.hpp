// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "solcheck/geometry.hpp"

namespace solcheck {

/// Order-0 coordinate components of a named tensor at one point.
struct TensorDump {
  std::string tensor;
  std::string model;
  std::vector<std::string> coords;
  Point point;
  int dimension = 0;
  int rank = 0;
  /// Row-major, first slot most significant.
  std::vector<double> values;
  /// Full metric contraction |T|^2.
  double norm_sq = 0.0;
};

/// riemann, ricci, scalar, weyl, cotton, bach, dtensor, div1rm..div4rm,
/// div1w..div4w, soliton_residual.
const std::vector<std::string>& tensor_names();

/// Throws UnknownTensor, DomainError and whatever the geometry raises.
TensorDump dump_tensor(const ModelSpec& m, std::string_view tensor, std::span<const double> p);

/// Parses "x=1,y=0.5" against the model coordinates. Every coordinate must be
/// assigned exactly once. Throws ValidationError.
Point parse_point(const ModelSpec& m, std::string_view text);

/// Components with |value| > threshold, one per line, then the |T|^2 line.
std::string render_dump_text(const TensorDump& d, double threshold);
/// Dense nested arrays.
std::string render_dump_json(const TensorDump& d);

}  // namespace solcheck
