// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "solcheck/curvature.hpp"
#include "solcheck/divchain.hpp"
#include "solcheck/error.hpp"
#include "solcheck/geometry.hpp"
#include "solcheck/models.hpp"

using namespace solcheck;

namespace {

ModelSpec polar_plane() {
  ModelSpec m;
  m.name = "polar";
  m.dimension = 2;
  m.coords = {"r", "th"};
  m.metric = {{parse_expression("1", m.coords), Expr()}, {Expr(), parse_expression("r^2", m.coords)}};
  m.domain = {{0.5, 3}, {0, 6}};
  return m;
}

double max_abs(const TensorJet& t) { return t.max_abs_value(); }

}  // namespace

TEST(Metric, PolarJet) {
  const ModelSpec m = polar_plane();
  const double p[] = {2.0, 1.0};
  const TensorJet g = metric_jet(m, p, 2);
  const Jet gtt = g.component({1, 1});
  EXPECT_DOUBLE_EQ(gtt.derivative({0, 0}), 4.0);
  EXPECT_DOUBLE_EQ(gtt.derivative({1, 0}), 4.0);
  EXPECT_DOUBLE_EQ(gtt.derivative({2, 0}), 2.0);
  const TensorJet gi = inverse_metric_jet(g);
  EXPECT_NEAR(gi.value({1, 1}), 0.25, 1e-15);
  EXPECT_NEAR(gi.component({1, 1}).derivative({1, 0}), -0.25, 1e-15);
  EXPECT_NEAR(gi.component({1, 1}).derivative({2, 0}), 6.0 / 16.0, 1e-14);
}

TEST(Metric, InverseJetIdentity) {
  for (const auto& e : builtin_models()) {
    const SamplePlan plan = sample_points(e.spec, 3, 5);
    for (const auto& p : plan.points) {
      const TensorJet g = metric_jet(e.spec, p, 4);
      const TensorJet gi = inverse_metric_jet(g);
      // g^{ik} g_{kj} as jets
      const TensorJet prod = contract(tensor_product(gi, g), 1, 2);
      for (std::size_t c = 0; c < prod.component_count(); ++c) {
        const auto idx = prod.unflatten(c);
        const auto co = prod.coeffs(c);
        for (std::size_t q = 0; q < co.size(); ++q) {
          const double want = (q == 0 && idx[0] == idx[1]) ? 1.0 : 0.0;
          EXPECT_NEAR(co[q], want, 1e-10) << e.spec.name;
        }
      }
    }
  }
}

TEST(Metric, NotPositiveDefinite) {
  ModelSpec m = polar_plane();
  m.metric[0][0] = parse_expression("-1", m.coords);
  const double p[] = {2.0, 1.0};
  try {
    metric_jet(m, p, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(Christoffel, Polar) {
  const ModelSpec m = polar_plane();
  const double p[] = {2.0, 1.0};
  const ChristoffelJet gam = christoffel_jet(m, p, 1);
  EXPECT_NEAR(gam.value(0, 1, 1), -2.0, 1e-15);
  EXPECT_NEAR(gam.value(1, 0, 1), 0.5, 1e-15);
  EXPECT_NEAR(gam.value(1, 1, 0), 0.5, 1e-15);
  EXPECT_NEAR(gam.value(0, 0, 0), 0.0, 1e-15);
}

TEST(Christoffel, SphereFactor) {
  const ModelSpec& m = builtin_model("product_r2s2");
  const double p[] = {0.3, -0.2, std::numbers::pi / 3, 1.0};
  const ChristoffelJet gam = christoffel_jet(m, p, 0);
  EXPECT_NEAR(gam.value(2, 3, 3), -0.4330127018922193, 1e-12);
}

TEST(Christoffel, FlatAndTorsionFree) {
  const double p[] = {0.1, 0.2, 0.3, 0.4};
  const ChristoffelJet flat = christoffel_jet(builtin_model("gaussian4"), p, 3);
  EXPECT_EQ(max_abs(flat.symbols), 0.0);
  const ChristoffelJet gam = christoffel_jet(builtin_model("random_perturb"), p, 3);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const auto a = gam.symbols.coeffs(gam.symbols.flat_index({k, i, j}));
        const auto b = gam.symbols.coeffs(gam.symbols.flat_index({k, j, i}));
        for (std::size_t q = 0; q < a.size(); ++q) EXPECT_EQ(a[q], b[q]);
      }
}

TEST(Covariant, MetricCompatibility) {
  for (const auto& e : builtin_models()) {
    for (const auto& p : sample_points(e.spec, 4, 1).points) {
      const Connection c = levi_civita(e.spec, p, 4);
      const TensorJet dg = covariant_derivative(c.metric.truncated(3), c.christoffel);
      for (std::size_t k = 0; k < dg.component_count(); ++k)
        for (double v : dg.coeffs(k)) EXPECT_LE(std::abs(v), 1e-10) << e.spec.name;
    }
  }
}

TEST(Covariant, ConstantScalarAndOrderExhausted) {
  const ModelSpec& m = builtin_model("cylinder_r1s3");
  const double p[] = {0.2, 1.2, 1.4, 2.0};
  const TensorJet s = scalar_field(parse_expression("3", m.coords), p, 2);
  EXPECT_EQ(max_abs(gradient(s)), 0.0);
  try {
    covariant_derivative(s.truncated(0), christoffel_jet(m, p, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderExhausted);
  }
}

TEST(Covariant, ParallelRicciOnCylinder) {
  const ModelSpec& m = builtin_model("cylinder_r1s3");
  const double p[] = {0.7, 1.1, 2.0, 4.0};
  PointGeometry geo(m, p, 3);
  EXPECT_LE(max_abs(geo.grad_ricci()), 1e-9);
}

TEST(Covariant, ContractionCommutesWithDerivative) {
  const ModelSpec& m = builtin_model("random_perturb");
  const double p[] = {0.3, -0.5, 0.2, 0.6};
  const Connection c = levi_civita(m, p, 4);
  const CurvatureBundle b = curvature_bundle(c);
  const TensorJet a = covariant_derivative(contract(b.riemann, 0, 2, &c.inverse), c.christoffel);
  const TensorJet d = contract(covariant_derivative(b.riemann, c.christoffel), 1, 3, &c.inverse);
  for (std::size_t k = 0; k < a.component_count(); ++k)
    EXPECT_NEAR(a.value_at(k), d.value_at(k), 1e-9);
}

TEST(Contract, IdentityTrace) {
  auto basis = JetBasis::get(3, 1);
  auto center = std::make_shared<const Point>(Point{0, 0, 0});
  TensorJet delta({Variance::Contravariant, Variance::Covariant}, basis, center);
  for (int i = 0; i < 3; ++i) delta.raw(delta.flat_index({i, i}))[0] = 1.0;
  EXPECT_DOUBLE_EQ(contract(delta, 0, 1).value({}), 3.0);
  EXPECT_THROW(contract(delta, 0, 0), Error);
  const TensorJet co = TensorJet::covariant(2, basis, center);
  try {
    contract(co, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SlotError);
  }
}

TEST(Contract, EinsteinSphereAndProductTrace) {
  const double p[] = {1.0, 1.3, 1.7, 2.0};
  const Connection c = levi_civita(builtin_model("sphere4"), p, 2);
  const CurvatureBundle b = curvature_bundle(c);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(b.ricci.value({i, j}), 0.5 * c.metric.value({i, j}), 1e-12);
  EXPECT_NEAR(b.scalar.value({}), 2.0, 1e-12);
  const double q[] = {0.5, -1.0, 1.2, 0.4};
  EXPECT_NEAR(curvature_bundle(builtin_model("product_r2s2"), q, 0).scalar.value({}), 1.0, 1e-12);
}

TEST(Index, RaiseLowerRoundTrip) {
  const ModelSpec& m = builtin_model("random_perturb");
  const double p[] = {0.1, 0.4, -0.3, 0.2};
  const Connection c = levi_civita(m, p, 3);
  const TensorJet ric = curvature_bundle(c).ricci;
  const TensorJet back = lower_index(raise_index(ric, 1, c.inverse), 1, c.metric);
  for (std::size_t k = 0; k < ric.component_count(); ++k)
    for (std::size_t q = 0; q < ric.coeff_count(); ++q)
      EXPECT_NEAR(back.coeffs(k)[q], ric.coeffs(k)[q], 1e-12 * (1 + std::abs(ric.coeffs(k)[q])));
  EXPECT_THROW(lower_index(ric, 0, c.metric), Error);
}

TEST(Index, GaussianGradient) {
  const ModelSpec& m = builtin_model("gaussian4");
  const double p[] = {1, 0, 0, 0};
  const Connection c = levi_civita(m, p, 1);
  const TensorJet up = raise_index(gradient(scalar_field(*m.potential, p, 1)), 0, c.inverse);
  EXPECT_DOUBLE_EQ(up.value({0}), 0.5);
  EXPECT_DOUBLE_EQ(up.value({1}), 0.0);
}

TEST(Hessian, Examples) {
  const double p[] = {1.0, -0.5, 0.3, 0.2};
  const TensorJet h = hessian(*builtin_model("gaussian4").potential, builtin_model("gaussian4"), p, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(h.value({i, j}), i == j ? 0.5 : 0.0, 1e-15);
  const ModelSpec& cyl = builtin_model("cylinder_r1s3");
  const double q[] = {0.7, 1.2, 1.6, 2.0};
  const TensorJet hc = hessian(*cyl.potential, cyl, q, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(hc.value({i, j}), (i == 0 && j == 0) ? 0.5 : 0.0, 1e-14);
}

TEST(Hessian, SymmetryOnGeneralMetric) {
  const ModelSpec& m = builtin_model("random_perturb");
  const double p[] = {0.4, 0.1, -0.6, 0.3};
  const Expr s = parse_expression("sin(x1*x2)+x3^2*exp(x4)", m.coords);
  const TensorJet h = hessian(s, m, p, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(h.value({i, j}), h.value({j, i}), 1e-10);
}

TEST(WeightedLaplacian, Examples) {
  const ModelSpec& cyl = builtin_model("cylinder_r1s3");
  const double p[] = {0.7, 1.2, 1.6, 2.0};
  PointGeometry geo(cyl, p, 4);
  EXPECT_LE(std::abs(weighted_laplacian(geo.scalar(), geo.connection(), geo.df()).value({})), 1e-10);
  const TensorJet cst = scalar_field(parse_expression("2", cyl.coords), p, 2);
  EXPECT_EQ(weighted_laplacian(cst, cyl).value({}), 0.0);
  try {
    weighted_laplacian(cst, builtin_model("warped_test"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingPotential);
  }
}

TEST(Curvature, Symmetries) {
  const ModelSpec& m = builtin_model("random_perturb");
  const double p[] = {0.2, -0.3, 0.5, 0.1};
  const TensorJet rm = curvature_bundle(m, p, 2).riemann;
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double v = rm.value({i, j, k, l});
          worst = std::max(worst, std::abs(v + rm.value({j, i, k, l})));
          worst = std::max(worst, std::abs(v + rm.value({i, j, l, k})));
          worst = std::max(worst, std::abs(v - rm.value({k, l, i, j})));
          worst = std::max(worst, std::abs(v + rm.value({i, k, l, j}) + rm.value({i, l, j, k})));
        }
  EXPECT_LE(worst, 1e-12);
  EXPECT_GT(rm.max_abs_value(), 1e-3);
}

TEST(Curvature, CylinderAndSphereConstants) {
  const double p[] = {0.3, 1.0, 2.0, 3.0};
  const CurvatureBundle b = curvature_bundle(builtin_model("cylinder_r1s3"), p, 0);
  EXPECT_NEAR(b.scalar.value({}), 1.5, 1e-12);
  const double u[] = {1, 0, 0, 0}, v[] = {0, 1, 0, 0}, w[] = {0, 0, 1, 0};
  EXPECT_NEAR(sectional_curvature(builtin_model("cylinder_r1s3"), p, u, v), 0.0, 1e-12);
  EXPECT_NEAR(sectional_curvature(builtin_model("cylinder_r1s3"), p, v, w), 0.25, 1e-12);
  const double q[] = {1.0, 1.3, 1.7, 2.0};
  const double a[] = {0.3, 1, -2, 0.5}, c[] = {1, 0, 0.4, 2};
  EXPECT_NEAR(sectional_curvature(builtin_model("sphere4"), q, a, c), 1.0 / 6.0, 1e-12);
  try {
    sectional_curvature(builtin_model("sphere4"), q, a, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePlane);
  }
}

TEST(Curvature, SelfTest) { EXPECT_EQ(curvature_self_test(), ""); }

TEST(Conformal, WeylOracles) {
  const double p[] = {0.1, 0.2, 1.3, 2.0};
  PointGeometry geo(builtin_model("product_r2s2"), p, 2);
  EXPECT_NEAR(geo.in_frame(geo.weyl()).norm_sq(), 1.0 / 3.0, 1e-12);
  PointGeometry cyl(builtin_model("cylinder_r1s3"), p, 2);
  EXPECT_LE(cyl.weyl().max_abs_value(), 1e-12);
  const double q[] = {0.4, 0.2, -0.7};
  PointGeometry w3(builtin_model("warped3"), q, 2);
  EXPECT_LE(w3.weyl().max_abs_value(), 1e-12);
  EXPECT_THROW(weyl_tensor(curvature_bundle(polar_plane(), p, 0), metric_jet(polar_plane(), p, 0),
                           inverse_metric_jet(metric_jet(polar_plane(), p, 0))),
               Error);
}

TEST(Conformal, BachOracles) {
  const double p[] = {0.1, 0.2, 1.3, 2.0};
  const TensorJet b = bach_tensor(builtin_model("product_r2s2"), p);
  PointGeometry geo(builtin_model("product_r2s2"), p, 2);
  const FrameTensor bf = geo.in_frame(b);
  EXPECT_NEAR(bf.norm_sq(), 1.0 / 144.0, 1e-12);
  EXPECT_NEAR(bf({0, 0}), -1.0 / 24.0, 1e-12);
  EXPECT_NEAR(bf({3, 3}), 1.0 / 24.0, 1e-12);
  EXPECT_LE(bach_tensor(builtin_model("gaussian4"), p).max_abs_value(), 1e-14);
  EXPECT_LE(bach_tensor(builtin_model("cylinder_r1s3"), p).max_abs_value(), 1e-10);
  const double q[] = {0.4, 0.2, -0.7};
  try {
    bach_tensor(builtin_model("warped3"), q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionError);
  }
}

TEST(Conformal, CottonAndD) {
  const double p[] = {0.4, 0.2, -0.1, 0.3};
  EXPECT_GT(cotton_tensor(builtin_model("warped_aniso"), p).max_abs_value(), 1e-3);
  EXPECT_LE(cotton_tensor(builtin_model("warped_test"), p).max_abs_value(), 1e-12);
  const double q[] = {0.7, -0.4, 1.2, 2.0};
  EXPECT_LE(cotton_tensor(builtin_model("product_r2s2"), q).max_abs_value(), 1e-12);
  // D = C + W(grad f) with C = 0 here.
  PointGeometry geo(builtin_model("product_r2s2"), q, 3);
  const TensorJet d = d_tensor(builtin_model("product_r2s2"), q);
  const TensorJet wf = contract(tensor_product(geo.weyl(), raise_index(geo.df(), 0, geo.inverse())), 3, 4);
  EXPECT_GT(d.max_abs_value(), 1e-2);
  for (std::size_t k = 0; k < d.component_count(); ++k) EXPECT_NEAR(d.value_at(k), wf.value_at(k), 1e-12);
  try {
    d_tensor(builtin_model("warped_test"), p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingPotential);
  }
}
