// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <span>

#include "solcheck/geometry.hpp"

namespace solcheck {

/// Riemann, Ricci and scalar curvature at one point, all of order
/// metric order - 2.
///
/// R^r_{smn} = d_m G^r_{ns} - d_n G^r_{ms} + G^r_{ml} G^l_{ns} - G^r_{nl} G^l_{ms},
/// R_{rsmn} = g_{ra} R^a_{smn}, Ric_{jl} = g^{ik} R_{ijkl}, R = g^{jl} Ric_{jl}.
/// Round spheres get R_{ijij} > 0 and div Rm_{ijk} = nabla_j Ric_{ik} - nabla_i Ric_{jk}.
struct CurvatureBundle {
  TensorJet riemann;
  TensorJet ricci;
  TensorJet scalar;

  int order() const noexcept { return riemann.order(); }
};

CurvatureBundle curvature_bundle(const Connection& conn);
/// Curvature of order r (metric evaluated to order r + 2).
CurvatureBundle curvature_bundle(const ModelSpec& m, std::span<const double> p, int order);

/// Sectional curvature of span(u, v). Throws DegeneratePlane.
double sectional_curvature(const CurvatureBundle& b, const TensorJet& g, std::span<const double> u,
                           std::span<const double> v);
double sectional_curvature(const ModelSpec& m, std::span<const double> p, std::span<const double> u,
                           std::span<const double> v);

/// W = Rm - (g (x) Ric terms)/(n-2) + R (g (x) g terms)/((n-1)(n-2)).
/// Throws DimensionError for n < 3.
TensorJet weyl_tensor(const CurvatureBundle& b, const TensorJet& g, const TensorJet& g_inv);

/// C_{ijk} = nabla_i Ric_{jk} - nabla_j Ric_{ik} - (g_jk nabla_i R - g_ik nabla_j R)/(2(n-1)).
/// Takes nabla Ric (derivative slot first) and dR. Throws DimensionError for n < 3.
TensorJet cotton_tensor(const TensorJet& grad_ric, const TensorJet& grad_r, const TensorJet& g);
TensorJet cotton_tensor(const ModelSpec& m, std::span<const double> p);

/// B_{ij} = nabla_k nabla_l W_{ikjl}/(n-3) + Ric_{kl} W_{ikjl}/(n-2).
/// Throws DimensionError for n <= 3.
TensorJet bach_tensor(const TensorJet& weyl, const TensorJet& ricci, const Connection& conn);
TensorJet bach_tensor(const ModelSpec& m, std::span<const double> p);

/// D_{ijk} from Ric, dR, df and R. Throws DimensionError for n < 3.
TensorJet d_tensor(const CurvatureBundle& b, const TensorJet& grad_r, const TensorJet& df,
                   const TensorJet& g);
/// Throws MissingPotential.
TensorJet d_tensor(const ModelSpec& m, std::span<const double> p);

/// Confirms the sign convention on a round sphere and on a warped product.
/// Returns an empty string on success, else a description of the failure.
std::string curvature_self_test();

}  // namespace solcheck
