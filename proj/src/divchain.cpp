// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/divchain.hpp"

#include <algorithm>

#include "solcheck/error.hpp"

namespace solcheck {

const char* family_name(Family f) noexcept { return f == Family::Rm ? "Rm" : "W"; }

std::vector<TensorJet> divergence_sequence(const TensorJet& t, std::span<const int> slots,
                                           const Connection& conn) {
  std::vector<TensorJet> out;
  out.reserve(slots.size());
  const TensorJet* cur = &t;
  for (int slot : slots) {
    if (slot < 0 || slot >= cur->rank()) throw Error(ErrorCode::SlotError, "divergence slot out of range");
    out.push_back(contract(covariant_derivative(*cur, conn.christoffel), 0, slot + 1, &conn.inverse));
    cur = &out.back();
  }
  return out;
}

PointGeometry::PointGeometry(const ModelSpec& m, std::span<const double> p, int metric_order)
    : model_(&m), point_(p.begin(), p.end()), metric_order_(metric_order) {
  if (static_cast<int>(p.size()) != m.dimension)
    throw Error(ErrorCode::DimensionError, "point has the wrong number of coordinates");
  if (metric_order < 2 || metric_order > kMaxJetOrder)
    throw Error(ErrorCode::OrderExhausted, "metric order out of range");
}

const Connection& PointGeometry::connection() {
  if (!conn_) conn_ = levi_civita(*model_, point_, metric_order_);
  return *conn_;
}

const CurvatureBundle& PointGeometry::curvature() {
  if (!curv_) curv_ = curvature_bundle(connection());
  return *curv_;
}

const TensorJet& PointGeometry::weyl() {
  if (!weyl_) weyl_ = weyl_tensor(curvature(), metric(), inverse());
  return *weyl_;
}

const TensorJet& PointGeometry::grad_ricci() {
  if (!grad_ric_) grad_ric_ = covariant_derivative(ricci(), christoffel());
  return *grad_ric_;
}

const TensorJet& PointGeometry::grad_scalar() {
  if (!grad_r_) grad_r_ = gradient(scalar());
  return *grad_r_;
}

const TensorJet& PointGeometry::grad_riemann() {
  if (!grad_rm_) grad_rm_ = covariant_derivative(riemann(), christoffel());
  return *grad_rm_;
}

const TensorJet& PointGeometry::hess_scalar() {
  if (!hess_r_) hess_r_ = covariant_derivative(grad_scalar(), christoffel());
  return *hess_r_;
}

const TensorJet& PointGeometry::hess_ricci() {
  if (!hess_ric_) hess_ric_ = covariant_derivative(grad_ricci(), christoffel());
  return *hess_ric_;
}

const TensorJet& PointGeometry::potential() {
  if (!f_) {
    if (!model_->potential)
      throw Error(ErrorCode::MissingPotential, "model '" + model_->name + "' has no potential");
    f_ = scalar_field(*model_->potential, point_, metric_order_);
  }
  return *f_;
}

const TensorJet& PointGeometry::df() {
  if (!df_) df_ = gradient(potential());
  return *df_;
}

const TensorJet& PointGeometry::hess_f() {
  if (!hess_f_) hess_f_ = covariant_derivative(df(), christoffel());
  return *hess_f_;
}

double PointGeometry::lambda() const {
  if (!model_->lambda) throw Error(ErrorCode::MissingPotential, "model '" + model_->name + "' has no lambda");
  return *model_->lambda;
}

const DivergenceChain& PointGeometry::chain(Family f) {
  auto& slot = f == Family::Rm ? chain_rm_ : chain_w_;
  if (!slot) {
    const int depth = std::min(4, metric_order_ - 2);
    slot = chain(f, std::span<const int>(kCanonicalSlots.data(), static_cast<std::size_t>(depth)));
  }
  return *slot;
}

DivergenceChain PointGeometry::chain(Family f, std::span<const int> slots) {
  if (static_cast<int>(slots.size()) > metric_order_ - 2)
    throw Error(ErrorCode::OrderExhausted, "divergence depth exceeds the metric jet order");
  DivergenceChain c;
  c.family = f;
  c.slots.assign(slots.begin(), slots.end());
  c.levels = divergence_sequence(family_tensor(f), slots, connection());
  return c;
}

const Frame& PointGeometry::frame() {
  if (!frame_) frame_ = orthonormal_frame(metric());
  return *frame_;
}

DivergenceChain div_chain(const ModelSpec& m, std::span<const double> p, Family family, int depth) {
  if (depth < 1 || depth > 4) throw Error(ErrorCode::SlotError, "depth must be 1..4");
  PointGeometry geo(m, p, chain_metric_order(depth));
  return geo.chain(family, std::span<const int>(kCanonicalSlots.data(), static_cast<std::size_t>(depth)));
}

double div3_radial(PointGeometry& geo, Family family) {
  const TensorJet& d3 = geo.chain(family).level(3);
  const TensorJet& df = geo.df();
  const TensorJet& ginv = geo.inverse();
  const int n = geo.dim();
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s += ginv.value({a, b}) * d3.value({a}) * df.value({b});
  return s;
}

double div3_radial(const ModelSpec& m, std::span<const double> p, Family family) {
  PointGeometry geo(m, p, chain_metric_order(3));
  return div3_radial(geo, family);
}

std::pair<TensorJet, TensorJet> div2_ordering_variants(PointGeometry& geo, Family family) {
  const TensorJet& t = family == Family::Rm ? geo.riemann() : geo.weyl();
  const Connection& conn = geo.connection();
  // Slots (a, b, i, j, k l) with a the outer derivative.
  const TensorJet d2 = covariant_derivative(covariant_derivative(t, conn.christoffel), conn.christoffel);
  TensorJet canonical = contract(contract(d2, 1, 5, &conn.inverse), 0, 2, &conn.inverse);
  TensorJet swapped = contract(contract(d2, 1, 3, &conn.inverse), 0, 3, &conn.inverse);
  return {std::move(canonical), std::move(swapped)};
}

std::pair<TensorJet, TensorJet> div2_ordering_variants(const ModelSpec& m, std::span<const double> p,
                                                       Family family) {
  PointGeometry geo(m, p, chain_metric_order(2));
  return div2_ordering_variants(geo, family);
}

double crossed_div4_w(PointGeometry& geo) {
  if (geo.dim() < 4) throw Error(ErrorCode::DimensionError, "crossed_div4_w needs dimension >= 4");
  static constexpr int kSlots[] = {0, 2, 1, 0};
  return geo.chain(Family::W, kSlots).level(4).value({});
}

double crossed_div4_w(const ModelSpec& m, std::span<const double> p) {
  PointGeometry geo(m, p, chain_metric_order(4));
  return crossed_div4_w(geo);
}

}  // namespace solcheck
