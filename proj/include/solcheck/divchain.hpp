// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <array>
#include <map>
#include <string>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "solcheck/curvature.hpp"
#include "solcheck/frame.hpp"
#include "solcheck/geometry.hpp"

namespace solcheck {

enum class Family { Rm, W };

const char* family_name(Family f) noexcept;

/// Applies nabla and contracts the new derivative slot with slots[s] (0-based
/// on the tensor before that step). Returns every intermediate level.
std::vector<TensorJet> divergence_sequence(const TensorJet& t, std::span<const int> slots,
                                           const Connection& conn);

/// Slots of the canonical chain: nabla_l, nabla_j, nabla_k, nabla_i on T_{ijkl}.
inline constexpr std::array<int, 4> kCanonicalSlots{3, 1, 1, 0};

struct DivergenceChain {
  Family family = Family::Rm;
  /// levels[k - 1] holds div^k.
  std::vector<TensorJet> levels;
  std::vector<int> slots;

  int depth() const noexcept { return static_cast<int>(levels.size()); }
  const TensorJet& level(int k) const { return levels.at(static_cast<std::size_t>(k - 1)); }
};

/// Everything the checks need at one sample point, computed on first use.
/// Not thread-safe; use one instance per worker.
class PointGeometry {
 public:
  PointGeometry(const ModelSpec& m, std::span<const double> p, int metric_order);

  const ModelSpec& model() const noexcept { return *model_; }
  const Point& point() const noexcept { return point_; }
  int dim() const noexcept { return model_->dimension; }
  int metric_order() const noexcept { return metric_order_; }

  const Connection& connection();
  const TensorJet& metric() { return connection().metric; }
  const TensorJet& inverse() { return connection().inverse; }
  const ChristoffelJet& christoffel() { return connection().christoffel; }
  const CurvatureBundle& curvature();
  const TensorJet& riemann() { return curvature().riemann; }
  const TensorJet& ricci() { return curvature().ricci; }
  const TensorJet& scalar() { return curvature().scalar; }
  const TensorJet& weyl();
  const TensorJet& grad_ricci();
  const TensorJet& grad_scalar();
  const TensorJet& grad_riemann();
  /// nabla nabla R and nabla nabla Ric (outer derivative first).
  const TensorJet& hess_scalar();
  const TensorJet& hess_ricci();
  /// Throws MissingPotential.
  const TensorJet& potential();
  const TensorJet& df();
  const TensorJet& hess_f();
  double lambda() const;

  /// Chain of the given family to the deepest level the jet order allows (max 4).
  const DivergenceChain& chain(Family f);
  /// Chain with custom slots, not cached.
  DivergenceChain chain(Family f, std::span<const int> slots);

  const Frame& frame();
  FrameTensor in_frame(const TensorJet& t) { return to_frame(t, frame()); }
  /// Frame components cached under `key`; make() yields the tensor on first use.
  template <class Make>
  const FrameTensor& framed(const std::string& key, Make&& make) {
    auto it = frames_.find(key);
    if (it == frames_.end()) it = frames_.emplace(key, to_frame(make(), frame())).first;
    return it->second;
  }

 private:
  const TensorJet& family_tensor(Family f) { return f == Family::Rm ? riemann() : weyl(); }

  const ModelSpec* model_;
  Point point_;
  int metric_order_;
  std::optional<Connection> conn_;
  std::optional<CurvatureBundle> curv_;
  std::optional<TensorJet> weyl_, grad_ric_, grad_r_, grad_rm_, hess_r_, hess_ric_, f_, df_, hess_f_;
  std::optional<DivergenceChain> chain_rm_, chain_w_;
  std::optional<Frame> frame_;
  std::map<std::string, FrameTensor> frames_;
};

/// Metric order needed for a chain of the given depth.
constexpr int chain_metric_order(int depth) noexcept { return depth + 2; }

DivergenceChain div_chain(const ModelSpec& m, std::span<const double> p, Family family, int depth);

/// <div^3 T, grad f>. Throws MissingPotential.
double div3_radial(PointGeometry& geo, Family family);
double div3_radial(const ModelSpec& m, std::span<const double> p, Family family);

/// nabla_j nabla_l T_{ijkl} and nabla_l nabla_j T_{ijkl}, both from the full
/// second derivative (rank 6).
std::pair<TensorJet, TensorJet> div2_ordering_variants(PointGeometry& geo, Family family);
std::pair<TensorJet, TensorJet> div2_ordering_variants(const ModelSpec& m, std::span<const double> p,
                                                       Family family);

/// nabla_k nabla_j nabla_l nabla_i W_{ikjl}. Throws DimensionError for n < 4.
double crossed_div4_w(PointGeometry& geo);
double crossed_div4_w(const ModelSpec& m, std::span<const double> p);

}  // namespace solcheck
