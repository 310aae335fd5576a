// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solcheck/geometry.hpp"

namespace solcheck {

struct CatalogEntry {
  ModelSpec spec;
  /// True for exact gradient shrinkers (Ric + Hess f = lambda g).
  bool shrinker = false;
  /// Expected R / lambda and Ricci eigenvalues in units of lambda, ascending.
  std::optional<double> scalar_ratio;
  std::vector<double> ricci_eigenvalues;
  std::string summary;
};

/// Catalog sorted by name. Immutable after first use.
const std::vector<CatalogEntry>& builtin_models();
/// Throws UnknownModel.
const CatalogEntry& builtin_entry(std::string_view name);
const ModelSpec& builtin_model(std::string_view name);

/// Round S^n of radius^2 = (n-1)/lambda in hyperspherical angles, f = 0.
ModelSpec sphere_model(int n, double lambda = 0.5);
/// R x S^(n-1) of radius^2 = (n-2)/lambda, f = lambda t^2 / 2.
ModelSpec cylinder_model(int n, double lambda = 0.5);

/// Parses the JSON model format. Throws ParseError (line/column in the message)
/// and ValidationError.
ModelSpec parse_model(std::string_view json_text);
/// Reads and parses a model file. Throws IoError as well.
ModelSpec load_model(const std::string& path);
/// Serializes to the model format; parse_model(model_to_json(m)) is equivalent to m.
std::string model_to_json(const ModelSpec& m);

/// Same name, coordinates, domain, margins, lambda and structurally equal expressions.
bool equivalent(const ModelSpec& a, const ModelSpec& b);

/// Builtin name or a path to a model file. Throws UnknownModel for a bare
/// unknown name and IoError for an unreadable path.
ModelSpec resolve_model(const std::string& selector);

/// Ric + Hess f - lambda g at p, order 0. Throws MissingPotential.
TensorJet soliton_residual(const ModelSpec& m, std::span<const double> p);

struct SamplePlan {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<Interval> box;  // domain shrunk by the margins
  std::vector<Point> points;
};

/// Seeded uniform points in the margin-shrunk domain; count == 1 gives the box
/// center. Throws EmptyDomain when margins exceed the box.
SamplePlan sample_points(const ModelSpec& m, std::size_t count, std::uint64_t seed);

}  // namespace solcheck
