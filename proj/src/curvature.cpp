// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solcheck/error.hpp"

namespace solcheck {

namespace {

void require_dim(int n, int min, const char* what) {
  if (n < min)
    throw Error(ErrorCode::DimensionError,
                std::string(what) + " needs dimension >= " + std::to_string(min) + ", got " +
                    std::to_string(n));
}

// Y_i X_jk - Y_j X_ik.
TensorJet antisym(const TensorJet& y, const TensorJet& x) {
  const TensorJet p = tensor_product(y, x);
  return p - permute(p, {1, 0, 2});
}

void symmetrize2(TensorJet& t) {
  const int n = t.dim();
  const std::size_t size = t.coeff_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double* a = t.raw(t.flat_index({i, j}));
      double* b = t.raw(t.flat_index({j, i}));
      for (std::size_t q = 0; q < size; ++q) {
        const double v = 0.5 * (a[q] + b[q]);
        a[q] = v;
        b[q] = v;
      }
    }
  }
}

}  // namespace

CurvatureBundle curvature_bundle(const Connection& conn) {
  const ChristoffelJet& gam = conn.christoffel;
  if (gam.order() < 1) throw Error(ErrorCode::OrderExhausted, "curvature needs metric order >= 2");
  const int n = conn.dim();
  const auto un = static_cast<std::size_t>(n);
  const int r = gam.order() - 1;
  auto basis = JetBasis::get(n, r);
  const std::size_t size = basis->size();
  const JetBasis& gb = gam.symbols.basis();
  const TensorJet& s = gam.symbols;
  auto G = [&](std::size_t a, std::size_t b, std::size_t c) { return s.raw((a * un + b) * un + c); };

  TensorJet up({Variance::Contravariant, Variance::Covariant, Variance::Covariant, Variance::Covariant},
               basis, s.center_ptr());
  for (std::size_t rho = 0; rho < un; ++rho) {
    for (std::size_t sig = 0; sig < un; ++sig) {
      for (std::size_t mu = 0; mu < un; ++mu) {
        for (std::size_t nu = mu + 1; nu < un; ++nu) {
          double* d = up.raw(((rho * un + sig) * un + mu) * un + nu);
          const double* a = G(rho, nu, sig);
          const double* b = G(rho, mu, sig);
          for (std::size_t q = 0; q < size; ++q)
            d[q] = a[gb.shift(static_cast<int>(mu), q)] - b[gb.shift(static_cast<int>(nu), q)];
          for (std::size_t lam = 0; lam < un; ++lam) {
            jet_mul_acc(*basis, G(rho, mu, lam), G(lam, nu, sig), d);
            jet_mul_acc(*basis, G(rho, nu, lam), G(lam, mu, sig), d, -1.0);
          }
          double* e = up.raw(((rho * un + sig) * un + nu) * un + mu);
          for (std::size_t q = 0; q < size; ++q) e[q] = -d[q];
        }
      }
    }
  }
  CurvatureBundle b;
  b.riemann = lower_index(up, 0, conn.metric);
  b.ricci = contract(b.riemann, 0, 2, &conn.inverse);
  symmetrize2(b.ricci);
  b.scalar = contract(b.ricci, 0, 1, &conn.inverse);
  return b;
}

CurvatureBundle curvature_bundle(const ModelSpec& m, std::span<const double> p, int order) {
  return curvature_bundle(levi_civita(m, p, order + 2));
}

double sectional_curvature(const CurvatureBundle& b, const TensorJet& g, std::span<const double> u,
                           std::span<const double> v) {
  const int n = g.dim();
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    throw Error(ErrorCode::DimensionError, "plane vectors have the wrong length");
  auto inner = [&](std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += g.value({i, j}) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    return s;
  };
  const double uu = inner(u, u);
  const double vv = inner(v, v);
  const double uv = inner(u, v);
  if (!(uu > 0.0) || !(vv > 0.0)) throw Error(ErrorCode::DegeneratePlane, "zero vector spans no plane");
  const double gram = 1.0 - uv * uv / (uu * vv);
  if (!(gram > 1e-12)) throw Error(ErrorCode::DegeneratePlane, "vectors are (nearly) parallel");
  double num = 0.0;
  const TensorJet& rm = b.riemann;
  for (std::size_t c = 0; c < rm.component_count(); ++c) {
    const auto idx = rm.unflatten(c);
    num += rm.value_at(c) * u[static_cast<std::size_t>(idx[0])] * v[static_cast<std::size_t>(idx[1])] *
           u[static_cast<std::size_t>(idx[2])] * v[static_cast<std::size_t>(idx[3])];
  }
  return num / (uu * vv * gram);
}

double sectional_curvature(const ModelSpec& m, std::span<const double> p, std::span<const double> u,
                           std::span<const double> v) {
  const Connection conn = levi_civita(m, p, 2);
  return sectional_curvature(curvature_bundle(conn), conn.metric, u, v);
}

TensorJet weyl_tensor(const CurvatureBundle& b, const TensorJet& g, const TensorJet& g_inv) {
  (void)g_inv;
  const int n = g.dim();
  require_dim(n, 3, "Weyl tensor");
  const TensorJet gr = tensor_product(g, b.ricci);  // g_ab Ric_cd
  const TensorJet rg = tensor_product(b.ricci, g);  // Ric_ab g_cd
  // g_ik R_jl - g_il R_jk - g_jk R_il + g_jl R_ik
  TensorJet kn = permute(gr, {0, 2, 1, 3});
  kn -= permute(gr, {0, 2, 3, 1});
  kn -= permute(rg, {0, 2, 3, 1});
  kn += permute(rg, {0, 2, 1, 3});
  const TensorJet gg = tensor_product(g, g);
  TensorJet gg_kn = permute(gg, {0, 2, 1, 3});
  gg_kn -= permute(gg, {0, 2, 3, 1});
  const double nd = n;
  TensorJet w = b.riemann;
  w -= (1.0 / (nd - 2.0)) * kn;
  w += (1.0 / ((nd - 1.0) * (nd - 2.0))) * scale(b.scalar, gg_kn);
  return w;
}

TensorJet cotton_tensor(const TensorJet& grad_ric, const TensorJet& grad_r, const TensorJet& g) {
  const int n = g.dim();
  require_dim(n, 3, "Cotton tensor");
  TensorJet c = grad_ric - permute(grad_ric, {1, 0, 2});
  c -= (1.0 / (2.0 * (n - 1))) * antisym(grad_r, g);
  return c;
}

TensorJet cotton_tensor(const ModelSpec& m, std::span<const double> p) {
  require_dim(m.dimension, 3, "Cotton tensor");
  const Connection conn = levi_civita(m, p, 3);
  const CurvatureBundle b = curvature_bundle(conn);
  return cotton_tensor(covariant_derivative(b.ricci, conn.christoffel), gradient(b.scalar), conn.metric);
}

TensorJet bach_tensor(const TensorJet& weyl, const TensorJet& ricci, const Connection& conn) {
  const int n = weyl.dim();
  require_dim(n, 4, "Bach tensor");
  const ChristoffelJet& gam = conn.christoffel;
  // nabla_l W_{ikjl} -> (i,k,j), then nabla_k -> (i,j).
  const TensorJet div1 = contract(covariant_derivative(weyl, gam), 0, 4, &conn.inverse);
  const TensorJet div2 = contract(covariant_derivative(div1, gam), 0, 2, &conn.inverse);
  const TensorJet ric_up = raise_index(raise_index(ricci, 0, conn.inverse), 1, conn.inverse);
  const TensorJet rw = contract(contract(tensor_product(weyl, ric_up), 1, 4), 2, 3);
  TensorJet bach = (1.0 / (n - 3.0)) * div2;
  bach += (1.0 / (n - 2.0)) * rw;
  return bach;
}

TensorJet bach_tensor(const ModelSpec& m, std::span<const double> p) {
  require_dim(m.dimension, 4, "Bach tensor");
  const Connection conn = levi_civita(m, p, 4);
  const CurvatureBundle b = curvature_bundle(conn);
  return bach_tensor(weyl_tensor(b, conn.metric, conn.inverse), b.ricci, conn);
}

TensorJet d_tensor(const CurvatureBundle& b, const TensorJet& grad_r, const TensorJet& df,
                   const TensorJet& g) {
  const double n = g.dim();
  require_dim(g.dim(), 3, "D tensor");
  TensorJet d = (1.0 / (n - 2.0)) * antisym(df, b.ricci);
  d += (1.0 / (2.0 * (n - 1.0) * (n - 2.0))) * antisym(grad_r, g);
  d -= (1.0 / ((n - 1.0) * (n - 2.0))) * scale(b.scalar, antisym(df, g));
  return d;
}

TensorJet d_tensor(const ModelSpec& m, std::span<const double> p) {
  if (!m.potential) throw Error(ErrorCode::MissingPotential, "model '" + m.name + "' has no potential");
  require_dim(m.dimension, 3, "D tensor");
  const Connection conn = levi_civita(m, p, 3);
  const CurvatureBundle b = curvature_bundle(conn);
  const TensorJet df = gradient(scalar_field(*m.potential, p, 1));
  return d_tensor(b, gradient(b.scalar), df, conn.metric);
}

std::string curvature_self_test() {
  try {
    ModelSpec s2;
    s2.name = "self_test_sphere";
    s2.dimension = 2;
    s2.coords = {"th", "ph"};
    s2.metric = {{parse_expression("1", s2.coords), Expr()},
                 {Expr(), parse_expression("sin(th)^2", s2.coords)}};
    s2.domain = {{0.5, 2.5}, {0.0, 6.0}};
    const double p[] = {1.0, 0.3};
    const CurvatureBundle b = curvature_bundle(s2, p, 0);
    const double r0101 = b.riemann.value({0, 1, 0, 1});
    const double want = std::sin(1.0) * std::sin(1.0);
    if (!(std::abs(r0101 - want) < 1e-12))
      return "round sphere: R_0101 = " + std::to_string(r0101) + ", expected +sin^2";
    if (!(std::abs(b.scalar.value({}) - 2.0) < 1e-12)) return "round sphere: scalar curvature is not 2";

    ModelSpec w;
    w.name = "self_test_warped";
    w.dimension = 3;
    w.coords = {"t", "x", "y"};
    const Expr phi2 = parse_expression("(1+t^2/10)^2*(1+x^2/7)", w.coords);
    w.metric = {{parse_expression("1", w.coords), Expr(), Expr()},
                {Expr(), phi2, Expr()},
                {Expr(), Expr(), parse_expression("(1+t^2/10)^2", w.coords)}};
    w.domain = {{-1, 1}, {-1, 1}, {-1, 1}};
    const double q[] = {0.7, 0.4, -0.2};
    const Connection conn = levi_civita(w, q, 3);
    const CurvatureBundle c = curvature_bundle(conn);
    const TensorJet div_rm = contract(covariant_derivative(c.riemann, conn.christoffel), 0, 4, &conn.inverse);
    const TensorJet dric = covariant_derivative(c.ricci, conn.christoffel);
    // nabla_j Ric_ik - nabla_i Ric_jk
    const TensorJet rhs = permute(dric, {1, 0, 2}) - dric;
    double gap = 0.0;
    double scale_ = 0.0;
    for (std::size_t k = 0; k < rhs.component_count(); ++k) {
      gap = std::max(gap, std::abs(div_rm.value_at(k) - rhs.value_at(k)));
      scale_ = std::max(scale_, std::abs(rhs.value_at(k)));
    }
    if (!(scale_ > 1e-3)) return "warped self-test metric has vanishing div Rm";
    if (!(gap <= 1e-10 * (1 + scale_))) return "contracted Bianchi identity fails with this sign convention";
  } catch (const Error& e) {
    return std::string("self-test raised: ") + e.what();
  }
  return {};
}

}  // namespace solcheck
