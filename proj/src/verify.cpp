// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "solcheck/error.hpp"

namespace solcheck {

namespace {

using FT = FrameTensor;
constexpr double kSolitonGate = 1e-9;

// Max-abs gap between two sides, normalized by their sizes.
class Compare {
 public:
  void add(double l, double r) {
    diff_ = std::max(diff_, std::abs(l - r));
    lhs_ = std::max(lhs_, std::abs(l));
    rhs_ = std::max(rhs_, std::abs(r));
    if (std::isnan(l) || std::isnan(r)) nan_ = true;
  }
  void add(const FT& l, const FT& r) {
    for (std::size_t k = 0; k < l.size(); ++k) add(l.at(k), r.at(k));
  }
  void add_zero(const FT& l) {
    for (std::size_t k = 0; k < l.size(); ++k) add(l.at(k), 0.0);
  }
  // Widens the normalization without adding a constraint.
  void scale(double s) { rhs_ = std::max(rhs_, std::abs(s)); }

  CheckValue value(double guard = -1.0) const {
    const double mag = std::max(lhs_, rhs_);
    CheckValue v;
    v.residual = nan_ ? std::numeric_limits<double>::quiet_NaN() : diff_ / (1.0 + mag);
    v.magnitude = mag;
    v.guard = guard < 0.0 ? mag : guard;
    return v;
  }

 private:
  double diff_ = 0.0, lhs_ = 0.0, rhs_ = 0.0;
  bool nan_ = false;
};

CheckValue worst(CheckValue a, const CheckValue& b) {
  if (std::isnan(b.residual) || b.residual > a.residual) a.residual = b.residual;
  a.magnitude = std::max(a.magnitude, b.magnitude);
  a.guard = std::max(a.guard, b.guard);
  return a;
}

CheckValue inequality(double small, double large) {
  CheckValue v;
  v.residual = std::isnan(small) || std::isnan(large) ? std::numeric_limits<double>::quiet_NaN()
                                                       : std::max(0.0, small - large);
  v.magnitude = std::max(std::abs(small), std::abs(large));
  v.guard = v.magnitude;
  return v;
}

// Frame views of the cached geometry. In an orthonormal frame every index is
// down and every contraction is a plain sum.
struct View {
  PointGeometry& g;
  int n;

  explicit View(PointGeometry& geo) : g(geo), n(geo.dim()) {}

  const FT& rm() { return g.framed("rm", [&]() -> const TensorJet& { return g.riemann(); }); }
  const FT& ric() { return g.framed("ric", [&]() -> const TensorJet& { return g.ricci(); }); }
  double R() { return g.framed("R", [&]() -> const TensorJet& { return g.scalar(); }).at(0); }
  const FT& dR() { return g.framed("dR", [&]() -> const TensorJet& { return g.grad_scalar(); }); }
  const FT& dric() { return g.framed("dric", [&]() -> const TensorJet& { return g.grad_ricci(); }); }
  const FT& ddR() { return g.framed("ddR", [&]() -> const TensorJet& { return g.hess_scalar(); }); }
  const FT& ddric() { return g.framed("ddric", [&]() -> const TensorJet& { return g.hess_ricci(); }); }
  const FT& drm() { return g.framed("drm", [&]() -> const TensorJet& { return g.grad_riemann(); }); }
  const FT& df() { return g.framed("df", [&]() -> const TensorJet& { return g.df(); }); }
  const FT& hf() { return g.framed("hf", [&]() -> const TensorJet& { return g.hess_f(); }); }
  const FT& w() { return g.framed("w", [&]() -> const TensorJet& { return g.weyl(); }); }
  const FT& div(Family f, int k) {
    return g.framed(std::string("div") + family_name(f) + std::to_string(k),
                    [&]() -> const TensorJet& { return g.chain(f).level(k); });
  }
  const FT& cotton() {
    return g.framed("cotton", [&] { return cotton_tensor(g.grad_ricci(), g.grad_scalar(), g.metric()); });
  }
  double lambda() { return g.lambda(); }
  double c1() const { return (n - 3.0) / (n - 2.0); }
  double c2() const { return (n - 3.0) / (2.0 * (n - 1.0) * (n - 2.0)); }

  FT make(int rank) const { return FT(n, rank); }

  // sum_l df_l X_{.., l} style helpers
  double ric_sq() { return ric().norm_sq(); }
  double rm_ric_ric() {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s += rm()({i, j, k, l}) * ric()({i, k}) * ric()({j, l});
    return s;
  }
  // R_ijkl R_jl
  FT rm_ric() {
    FT out = make(2);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) s += rm()({i, j, k, l}) * ric()({j, l});
        out({i, k}) = s;
      }
    return out;
  }
  FT ric_squared() {
    FT out = make(2);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += ric()({i, j}) * ric()({j, k});
        out({i, k}) = s;
      }
    return out;
  }
  // nabla_{grad f} Ric
  FT ric_along_f() {
    FT out = make(2);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += df()({l}) * dric()({l, i, k});
        out({i, k}) = s;
      }
    return out;
  }
  double dot_df(const FT& v) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += v.at(static_cast<std::size_t>(i)) * df()({i});
    return s;
  }
  // R_ijkl nabla_k R_jl
  FT rm_dric() {
    FT out = make(1);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s += rm()({i, j, k, l}) * dric()({k, j, l});
      out({i}) = s;
    }
    return out;
  }
  // R_ik nabla_k R
  FT ric_dR() {
    FT out = make(1);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += ric()({i, k}) * dR()({k});
      out({i}) = s;
    }
    return out;
  }
  // nabla_l R_jk nabla_k R_jl - |nabla Ric|^2 - R_ijkl nabla_i nabla_k R_jl
  double div4rm_rhs() {
    double cross = 0, hess = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          cross += dric()({i, j, k}) * dric()({k, j, i});
          for (int l = 0; l < n; ++l) hess += rm()({i, j, k, l}) * ddric()({i, k, j, l});
        }
    return cross - dric().norm_sq() - hess;
  }
  double ric_ddR() {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) s += ric()({i, k}) * ddR()({i, k});
    return s;
  }
  double lap_R() {
    double s = 0;
    for (int i = 0; i < n; ++i) s += ddR()({i, i});
    return s;
  }
};

double scalar_of(const FT& t) { return t.at(0); }

FT transpose2(const FT& a) {
  FT t(a.dim(), 2);
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) t({i, k}) = a({k, i});
  return t;
}

FT weighted_exp_divergence(PointGeometry& g, const TensorJet& t, int slot) {
  const TensorJet& f = g.potential();
  const TensorJet ef = TensorJet::scalar(exp(-f.component({})));
  const TensorJet wt = scale(ef, t);
  const TensorJet d =
      contract(covariant_derivative(wt, g.christoffel()), 0, slot + 1, &g.inverse());
  return g.in_frame(d);
}

Expr hessian_probe(int n) {
  Expr u;
  for (int i = 0; i < n; ++i) u = u + Expr::literal(0.3 * (i + 1)) * Expr::symbol(i);
  return sin(u + Expr::literal(0.2)) * exp(Expr::symbol(0) * Expr::symbol(n - 1) * Expr::literal(0.25));
}

std::vector<CheckSpec> build_registry() {
  std::vector<CheckSpec> r;
  auto add = [&](std::string id, Tier tier, std::string desc, int order, int min_dim,
                 std::function<CheckValue(PointGeometry&)> fn, int exact_dim = 0) {
    CheckSpec c;
    c.id = std::move(id);
    c.tier = tier;
    c.description = std::move(desc);
    c.requires_potential = tier != Tier::A;
    c.min_dim = min_dim;
    c.exact_dim = exact_dim;
    c.metric_order = order;
    c.evaluate = std::move(fn);
    r.push_back(std::move(c));
  };

  // ---- Tier A: every metric ----
  add("A.metric_compat", Tier::A, "nabla g = 0", 2, 2, [](PointGeometry& g) {
    Compare c;
    c.add_zero(g.in_frame(covariant_derivative(g.metric(), g.christoffel())));
    return c.value();
  });
  add("A.torsion_free", Tier::A, "Gamma^k_ij = Gamma^k_ji for every jet coefficient", 2, 2, [](PointGeometry& g) {
    const TensorJet& s = g.christoffel().symbols;
    const int n = g.dim();
    Compare c;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const auto a = s.coeffs(s.flat_index({k, i, j}));
          const auto b = s.coeffs(s.flat_index({k, j, i}));
          for (std::size_t q = 0; q < a.size(); ++q) c.add(a[q], b[q]);
        }
    return c.value();
  });
  add("A.riemann_symmetries", Tier::A, "R_ijkl = -R_jikl = -R_ijlk = R_klij", 2, 2, [](PointGeometry& g) {
    View v(g);
    const FT& rm = v.rm();
    Compare c;
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k)
          for (int l = 0; l < v.n; ++l) {
            c.add(rm({i, j, k, l}), -rm({j, i, k, l}));
            c.add(rm({i, j, k, l}), -rm({i, j, l, k}));
            c.add(rm({i, j, k, l}), rm({k, l, i, j}));
          }
    return c.value();
  });
  add("A.bianchi1", Tier::A, "R_ijkl + R_iklj + R_iljk = 0", 2, 2, [](PointGeometry& g) {
    View v(g);
    const FT& rm = v.rm();
    Compare c;
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k)
          for (int l = 0; l < v.n; ++l) c.add(rm({i, j, k, l}) + rm({i, k, l, j}), -rm({i, l, j, k}));
    return c.value();
  });
  add("A.bianchi2c", Tier::A, "nabla_l R_ijkl = nabla_j R_ik - nabla_i R_jk", 3, 2, [](PointGeometry& g) {
    View v(g);
    const FT& d1 = v.div(Family::Rm, 1);
    const FT& dr = v.dric();
    FT rhs = v.make(3);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k) rhs({i, j, k}) = dr({j, i, k}) - dr({i, j, k});
    Compare c;
    c.add(d1, rhs);
    return c.value();
  });
  add("A.bianchi_traced", Tier::A, "nabla R = 2 div Ric", 3, 2, [](PointGeometry& g) {
    View v(g);
    FT rhs = v.make(1);
    for (int i = 0; i < v.n; ++i) {
      double s = 0;
      for (int a = 0; a < v.n; ++a) s += v.dric()({a, a, i});
      rhs({i}) = 2 * s;
    }
    Compare c;
    c.add(v.dR(), rhs);
    return c.value();
  });
  add("A.contraction_commutes", Tier::A, "nabla of the Riemann trace equals the trace of nabla Riemann", 3, 2,
      [](PointGeometry& g) {
        View v(g);
        FT rhs = v.make(3);
        for (int a = 0; a < v.n; ++a)
          for (int j = 0; j < v.n; ++j)
            for (int l = 0; l < v.n; ++l) {
              double s = 0;
              for (int i = 0; i < v.n; ++i) s += v.drm()({a, i, j, i, l});
              rhs({a, j, l}) = s;
            }
        Compare c;
        c.add(v.dric(), rhs);
        return c.value();
      });
  add("A.hessian_symmetry", Tier::A, "(nabla nabla s)_ab = (nabla nabla s)_ba for a probe scalar s", 2, 2,
      [](PointGeometry& g) {
        const TensorJet s = scalar_field(hessian_probe(g.dim()), g.point(), 2);
        const FT h = g.in_frame(hessian(s, g.christoffel()));
        Compare c;
        c.add(h, transpose2(h));
        return c.value();
      });
  add("A.weyl_tracefree", Tier::A, "every trace of W vanishes", 2, 3, [](PointGeometry& g) {
    View v(g);
    const FT& w = v.w();
    Compare c;
    for (int a = 0; a < v.n; ++a)
      for (int b = 0; b < v.n; ++b) {
        double t1 = 0, t2 = 0, t3 = 0;
        for (int i = 0; i < v.n; ++i) {
          t1 += w({i, a, i, b});
          t2 += w({a, i, b, i});
          t3 += w({i, i, a, b});
        }
        c.add(t1, 0);
        c.add(t2, 0);
        c.add(t3, 0);
      }
    c.scale(w.max_abs());
    return c.value();
  });
  add(
      "A.weyl_n3_vanish", Tier::A, "W = 0 in dimension 3", 2, 3,
      [](PointGeometry& g) {
        View v(g);
        Compare c;
        c.add_zero(v.w());
        c.scale(v.rm().max_abs());
        return c.value();
      },
      3);
  add("A.cotton_structure", Tier::A, "C_ijk = -C_jik and g^ij C_ijk = g^jk C_ijk = 0", 3, 3, [](PointGeometry& g) {
    View v(g);
    const FT& ct = v.cotton();
    Compare c;
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k) c.add(ct({i, j, k}), -ct({j, i, k}));
    for (int a = 0; a < v.n; ++a) {
      double t1 = 0, t2 = 0;
      for (int i = 0; i < v.n; ++i) {
        t1 += ct({i, i, a});
        t2 += ct({a, i, i});
      }
      c.add(t1, 0);
      c.add(t2, 0);
    }
    return c.value();
  });
  add("A.p6_29", Tier::A, "div W = c1 div Rm - c2 (g_ik nabla_j R - g_jk nabla_i R)", 3, 3, [](PointGeometry& g) {
    View v(g);
    FT rhs = v.make(3);
    const FT& d = v.div(Family::Rm, 1);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k)
          rhs({i, j, k}) = v.c1() * d({i, j, k}) -
                           v.c2() * ((i == k ? v.dR()({j}) : 0.0) - (j == k ? v.dR()({i}) : 0.0));
    Compare c;
    c.add(v.div(Family::W, 1), rhs);
    return c.value();
  });
  add("A.div_w_vs_cotton", Tier::A, "(div W)_ijk = c1 C_jik", 3, 3, [](PointGeometry& g) {
    View v(g);
    FT rhs = v.make(3);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k) rhs({i, j, k}) = v.c1() * v.cotton()({j, i, k});
    Compare c;
    c.add(v.div(Family::W, 1), rhs);
    return c.value(v.div(Family::W, 1).max_abs());
  });
  add("A.bach_symmetric", Tier::A, "B_ij = B_ji", 4, 4, [](PointGeometry& g) {
    View v(g);
    FT b = v.make(2);
    const FT& d2 = v.div(Family::W, 2);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j) {
        double s = 0;
        for (int k = 0; k < v.n; ++k)
          for (int l = 0; l < v.n; ++l) s += v.ric()({k, l}) * v.w()({i, k, j, l});
        b({i, j}) = d2({i, j}) / (v.n - 3.0) + s / (v.n - 2.0);
      }
    Compare c;
    c.add(b, transpose2(b));
    return c.value(b.max_abs());
  });
  add("A.grad_r_bound", Tier::A, "|nabla R|^2 <= n |nabla Ric|^2", 3, 2, [](PointGeometry& g) {
    View v(g);
    return inequality(v.dR().norm_sq(), v.n * v.dric().norm_sq());
  });

  // ---- Tier B: gradient shrinking solitons ----
  add("B.soliton_eq", Tier::B, "Ric + Hess f = lambda g", 2, 2, [](PointGeometry& g) {
    View v(g);
    FT lhs = v.make(2), rhs = v.make(2);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j) {
        lhs({i, j}) = v.ric()({i, j}) + v.hf()({i, j});
        rhs({i, j}) = i == j ? v.lambda() : 0.0;
      }
    Compare c;
    c.add(lhs, rhs);
    return c.value();
  });
  add("B.p2_3", Tier::B, "R_ijkl nabla_l f = nabla_l R_ijkl", 3, 2, [](PointGeometry& g) {
    View v(g);
    FT lhs = v.make(3);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k) {
          double s = 0;
          for (int l = 0; l < v.n; ++l) s += v.rm()({i, j, k, l}) * v.df()({l});
          lhs({i, j, k}) = s;
        }
    Compare c;
    c.add(lhs, v.div(Family::Rm, 1));
    return c.value();
  });
  add("B.p2_4", Tier::B, "nabla_l (R_ijkl e^-f) = 0", 3, 2, [](PointGeometry& g) {
    View v(g);
    const FT d = weighted_exp_divergence(g, g.riemann(), 3);
    Compare c;
    c.add_zero(d);
    c.scale(std::exp(-g.potential().value({})) * v.div(Family::Rm, 1).max_abs());
    return c.value();
  });
  add("B.p2_5", Tier::B, "R_jl nabla_l f = nabla_l R_jl", 3, 2, [](PointGeometry& g) {
    View v(g);
    FT lhs = v.make(1), rhs = v.make(1);
    for (int j = 0; j < v.n; ++j) {
      double a = 0, b = 0;
      for (int l = 0; l < v.n; ++l) {
        a += v.ric()({j, l}) * v.df()({l});
        b += v.dric()({l, j, l});
      }
      lhs({j}) = a;
      rhs({j}) = b;
    }
    Compare c;
    c.add(lhs, rhs);
    return c.value();
  });
  add("B.p2_6", Tier::B, "nabla_l (R_jl e^-f) = 0", 3, 2, [](PointGeometry& g) {
    View v(g);
    const FT d = weighted_exp_divergence(g, g.ricci(), 1);
    double s = 0;
    for (int j = 0; j < v.n; ++j) {
      double a = 0;
      for (int l = 0; l < v.n; ++l) a += v.ric()({j, l}) * v.df()({l});
      s = std::max(s, std::abs(a));
    }
    Compare c;
    c.add_zero(d);
    c.scale(std::exp(-g.potential().value({})) * s);
    return c.value();
  });
  add("B.p2_7", Tier::B, "nabla R = 2 Ric(grad f, .)", 3, 2, [](PointGeometry& g) {
    View v(g);
    FT rhs = v.make(1);
    for (int i = 0; i < v.n; ++i) {
      double s = 0;
      for (int l = 0; l < v.n; ++l) s += v.ric()({i, l}) * v.df()({l});
      rhs({i}) = 2 * s;
    }
    Compare c;
    c.add(v.dR(), rhs);
    return c.value();
  });
  add("B.p2_8", Tier::B, "Delta_f Ric = 2 lambda Ric - 2 R_ijkl R_jl", 4, 2, [](PointGeometry& g) {
    View v(g);
    const FT lhs = g.in_frame(weighted_laplacian(g.ricci(), g.connection(), g.df()));
    const FT rr = v.rm_ric();
    FT rhs = v.make(2);
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs.at(k) = 2 * v.lambda() * v.ric().at(k) - 2 * rr.at(k);
    Compare c;
    c.add(lhs, rhs);
    return c.value(2 * v.lambda() * v.ric().max_abs());
  });
  add("B.p2_9", Tier::B, "Delta_f R = 2 lambda R - 2 |Ric|^2", 4, 2, [](PointGeometry& g) {
    View v(g);
    const double lhs = weighted_laplacian(g.scalar(), g.connection(), g.df()).value({});
    Compare c;
    c.add(lhs, 2 * v.lambda() * v.R() - 2 * v.ric_sq());
    c.scale(2 * v.lambda() * std::abs(v.R()));
    return c.value();
  });
  add("B.p2_10", Tier::B, "Delta_f R = trace Hess R - <grad f, nabla R>", 4, 2, [](PointGeometry& g) {
    View v(g);
    const double lhs = weighted_laplacian(g.scalar(), g.connection(), g.df()).value({});
    Compare c;
    c.add(lhs, v.lap_R() - v.dot_df(v.dR()));
    return c.value();
  });
  add("B.p2_11", Tier::B, "Delta_f |Ric|^2 = 4 lambda |Ric|^2 - 4 Rm(Ric,Ric) + 2 |nabla Ric|^2", 4, 2,
      [](PointGeometry& g) {
        View v(g);
        const TensorJet ric_sq = squared_norm(g.ricci(), g.inverse());
        const double lhs = weighted_laplacian(ric_sq, g.connection(), g.df()).value({});
        Compare c;
        c.add(lhs, 4 * v.lambda() * v.ric_sq() - 4 * v.rm_ric_ric() + 2 * v.dric().norm_sq());
        c.scale(4 * v.lambda() * v.ric_sq());
        return c.value();
      });
  add("B.p2_12", Tier::B, "nabla (R + |grad f|^2 - 2 lambda f) = 0", 3, 2, [](PointGeometry& g) {
    View v(g);
    const FT grad_sq = g.in_frame(gradient(squared_norm(g.df(), g.inverse())));
    FT lhs = v.make(1), rhs = v.make(1);
    for (int i = 0; i < v.n; ++i) {
      lhs({i}) = v.dR()({i}) + grad_sq({i});
      rhs({i}) = 2 * v.lambda() * v.df()({i});
    }
    Compare c;
    c.add(lhs, rhs);
    return c.value();
  });
  add("B.p2_13", Tier::B,
      "div^2 Rm = 2 lambda Ric + nabla_{grad f} Ric - Hess R / 2 - Ric^2 - R_ijkl R_jl", 4, 2,
      [](PointGeometry& g) {
        View v(g);
        const FT along = v.ric_along_f();
        const FT sq = v.ric_squared();
        const FT rr = v.rm_ric();
        FT rhs = v.make(2);
        for (int i = 0; i < v.n; ++i)
          for (int k = 0; k < v.n; ++k)
            rhs({i, k}) = 2 * v.lambda() * v.ric()({i, k}) + along({i, k}) - 0.5 * v.ddR()({i, k}) -
                          sq({i, k}) - rr({i, k});
        Compare c;
        c.add(v.div(Family::Rm, 2), rhs);
        return c.value(2 * v.lambda() * v.ric().max_abs());
      });
  add("B.p2_14", Tier::B, "div^3 Rm_i = -R_ijkl nabla_k R_jl", 5, 2, [](PointGeometry& g) {
    View v(g);
    FT rhs = v.rm_dric();
    for (double& x : rhs.data()) x = -x;
    Compare c;
    c.add(v.div(Family::Rm, 3), rhs);
    c.scale(v.rm().max_abs() * v.dric().max_abs());
    return c.value();
  });
  add("B.p2_15", Tier::B,
      "div^4 Rm = nabla_l R_jk nabla_k R_jl - |nabla Ric|^2 - R_ijkl nabla_i nabla_k R_jl", 6, 2,
      [](PointGeometry& g) {
        View v(g);
        Compare c;
        c.add(scalar_of(v.div(Family::Rm, 4)), v.div4rm_rhs());
        c.scale(v.rm().max_abs() * v.ddric().max_abs());
        return c.value();
      });
  add("B.rem2_1_div2", Tier::B, "nabla_j nabla_l R_ijkl = nabla_l nabla_j R_ijkl, symmetric in (i,k)", 4, 2,
      [](PointGeometry& g) {
        const auto [a, b] = div2_ordering_variants(g, Family::Rm);
        const FT fa = g.in_frame(a), fb = g.in_frame(b);
        Compare c1, c2;
        c1.add(fa, fb);
        c2.add(fa, transpose2(fa));
        return worst(c1.value(), c2.value());
      });
  add("B.rem2_1_div3", Tier::B, "the four orderings of div^3 Rm agree", 5, 2, [](PointGeometry& g) {
    View v(g);
    static constexpr int kOrders[3][3] = {{3, 1, 0}, {1, 2, 1}, {1, 2, 0}};
    const FT& ref = v.div(Family::Rm, 3);
    Compare c;
    for (const auto& o : kOrders) c.add(ref, g.in_frame(g.chain(Family::Rm, o).level(3)));
    return c.value();
  });
  add("B.rem2_1_div4", Tier::B, "the four orderings of div^4 Rm agree", 6, 2, [](PointGeometry& g) {
    View v(g);
    static constexpr int kOrders[3][4] = {{1, 2, 1, 0}, {3, 1, 0, 0}, {1, 2, 0, 0}};
    const double ref = scalar_of(v.div(Family::Rm, 4));
    Compare c;
    for (const auto& o : kOrders) c.add(ref, g.chain(Family::Rm, o).level(4).value({}));
    c.scale(v.div(Family::Rm, 2).max_abs());
    return c.value();
  });
  add("B.thm5_1", Tier::B, "div^3 Rm(grad f) = -|div Rm|^2 / 2", 5, 2, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(v.dot_df(v.div(Family::Rm, 3)), -0.5 * v.div(Family::Rm, 1).norm_sq());
    return c.value(v.div(Family::Rm, 1).max_abs());
  });
  add("B.p6_30", Tier::B, "div^2 W = c1 div^2 Rm - c2 (g_ik Delta R - nabla_k nabla_i R)", 4, 3,
      [](PointGeometry& g) {
        View v(g);
        FT rhs = v.make(2);
        const FT& d2 = v.div(Family::Rm, 2);
        for (int i = 0; i < v.n; ++i)
          for (int k = 0; k < v.n; ++k)
            rhs({i, k}) = v.c1() * d2({i, k}) - v.c2() * ((i == k ? v.lap_R() : 0.0) - v.ddR()({k, i}));
        Compare c;
        c.add(v.div(Family::W, 2), rhs);
        return c.value();
      });
  add("B.p6_31", Tier::B, "div^3 W = c1 div^3 Rm + c2 R_ik nabla_k R", 5, 3, [](PointGeometry& g) {
    View v(g);
    FT rhs = v.make(1);
    const FT rdr = v.ric_dR();
    for (int i = 0; i < v.n; ++i) rhs({i}) = v.c1() * v.div(Family::Rm, 3)({i}) + v.c2() * rdr({i});
    Compare c;
    c.add(v.div(Family::W, 3), rhs);
    return c.value();
  });
  add("B.p6_32", Tier::B, "div^4 W = c1 div^4 Rm + c2 (|nabla R|^2 / 2 + R_ik nabla_i nabla_k R)", 6, 3,
      [](PointGeometry& g) {
        View v(g);
        Compare c;
        c.add(scalar_of(v.div(Family::W, 4)),
              v.c1() * scalar_of(v.div(Family::Rm, 4)) + v.c2() * (0.5 * v.dR().norm_sq() + v.ric_ddR()));
        return c.value();
      });
  add("B.c6_33", Tier::B, "div W = c1 (nabla_j R_ik - nabla_i R_jk) - c2 (g_ik nabla_j R - g_jk nabla_i R)", 3,
      3, [](PointGeometry& g) {
        View v(g);
        FT rhs = v.make(3);
        for (int i = 0; i < v.n; ++i)
          for (int j = 0; j < v.n; ++j)
            for (int k = 0; k < v.n; ++k)
              rhs({i, j, k}) = v.c1() * (v.dric()({j, i, k}) - v.dric()({i, j, k})) -
                               v.c2() * ((i == k ? v.dR()({j}) : 0.0) - (j == k ? v.dR()({i}) : 0.0));
        Compare c;
        c.add(v.div(Family::W, 1), rhs);
        return c.value();
      });
  add("B.c6_34", Tier::B, "div^2 W in terms of Ric, nabla f and R", 4, 3, [](PointGeometry& g) {
    View v(g);
    const FT along = v.ric_along_f();
    const FT sq = v.ric_squared();
    const FT rr = v.rm_ric();
    const double trace_term = v.dot_df(v.dR()) + 2 * v.lambda() * v.R() - 2 * v.ric_sq();
    const double kdd = (v.n - 3.0) / (2.0 * (v.n - 1.0));
    FT rhs = v.make(2);
    for (int i = 0; i < v.n; ++i)
      for (int k = 0; k < v.n; ++k)
        rhs({i, k}) = v.c1() * (2 * v.lambda() * v.ric()({i, k}) + along({i, k}) - sq({i, k}) - rr({i, k})) -
                      kdd * v.ddR()({i, k}) - v.c2() * trace_term * (i == k ? 1.0 : 0.0);
    Compare c;
    c.add(v.div(Family::W, 2), rhs);
    return c.value(2 * v.c1() * v.lambda() * v.ric().max_abs());
  });
  add("B.c6_35", Tier::B, "div^3 W = -c1 R_ijkl nabla_k R_jl + c2 R_ik nabla_k R", 5, 3, [](PointGeometry& g) {
    View v(g);
    const FT a = v.rm_dric();
    const FT b = v.ric_dR();
    FT rhs = v.make(1);
    for (int i = 0; i < v.n; ++i) rhs({i}) = -v.c1() * a({i}) + v.c2() * b({i});
    Compare c;
    c.add(v.div(Family::W, 3), rhs);
    c.scale(v.c1() * v.rm().max_abs() * v.dric().max_abs());
    return c.value();
  });
  add("B.c6_36", Tier::B, "div^4 W in terms of nabla Ric, nabla nabla Ric and R", 6, 3, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(scalar_of(v.div(Family::W, 4)),
          v.c1() * v.div4rm_rhs() + v.c2() * (0.5 * v.dR().norm_sq() + v.ric_ddR()));
    c.scale(v.c1() * v.rm().max_abs() * v.ddric().max_abs());
    return c.value();
  });
  add("B.c6_37", Tier::B, "div^3 W(grad f) = -(n-3)/(2(n-2)) |div Rm|^2 + (n-3)/(4(n-1)(n-2)) |nabla R|^2", 5,
      3, [](PointGeometry& g) {
        View v(g);
        const double n = v.n;
        Compare c;
        c.add(v.dot_df(v.div(Family::W, 3)), -(n - 3) / (2 * (n - 2)) * v.div(Family::Rm, 1).norm_sq() +
                                                 (n - 3) / (4 * (n - 1) * (n - 2)) * v.dR().norm_sq());
        return c.value();
      });
  add("B.d_tensor", Tier::B, "D_ijk = C_ijk + W_ijkl nabla_l f", 3, 3, [](PointGeometry& g) {
    View v(g);
    const FT d = g.in_frame(d_tensor(g.curvature(), g.grad_scalar(), g.df(), g.metric()));
    FT rhs = v.make(3);
    for (int i = 0; i < v.n; ++i)
      for (int j = 0; j < v.n; ++j)
        for (int k = 0; k < v.n; ++k) {
          double s = 0;
          for (int l = 0; l < v.n; ++l) s += v.w()({i, j, k, l}) * v.df()({l});
          rhs({i, j, k}) = v.cotton()({i, j, k}) + s;
        }
    Compare c;
    c.add(d, rhs);
    return c.value();
  });
  add("B.rem8_39", Tier::B, "nabla_k nabla_j nabla_l nabla_i W_ikjl = -div^4 W", 6, 4, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(crossed_div4_w(g), -scalar_of(v.div(Family::W, 4)));
    c.scale(v.div(Family::W, 2).max_abs());
    return c.value();
  });
  add("B.rem8_40", Tier::B, "nabla_j nabla_l W_ijkl = nabla_l nabla_j W_ijkl, symmetric in (i,k)", 4, 4,
      [](PointGeometry& g) {
        const auto [a, b] = div2_ordering_variants(g, Family::W);
        const FT fa = g.in_frame(a), fb = g.in_frame(b);
        Compare c1, c2;
        c1.add(fa, fb);
        c2.add(fa, transpose2(fa));
        return worst(c1.value(), c2.value());
      });
  add("B.scalar_nonneg", Tier::B, "R >= 0", 2, 2, [](PointGeometry& g) {
    View v(g);
    return inequality(-v.R(), 0.0);
  });
  add("B.grad_r_bound_f", Tier::B, "|nabla R|^2 <= 4 |Ric|^2 |grad f|^2", 3, 2, [](PointGeometry& g) {
    View v(g);
    return inequality(v.dR().norm_sq(), 4 * v.ric_sq() * v.df().norm_sq());
  });

  // ---- Tier C: consequences checked on rigid shrinkers ----
  add(kSolitonGateId, Tier::C, "soliton equation residual below 1e-9 (gate for the other Tier C rows)", 2, 2,
      [](PointGeometry& g) {
        View v(g);
        FT lhs = v.make(2), rhs = v.make(2);
        for (int i = 0; i < v.n; ++i)
          for (int j = 0; j < v.n; ++j) {
            lhs({i, j}) = v.ric()({i, j}) + v.hf()({i, j});
            rhs({i, j}) = i == j ? v.lambda() : 0.0;
          }
        Compare c;
        c.add(lhs, rhs);
        return c.value();
      });
  add("C.rigid_div4rm", Tier::C, "div^4 Rm = 0", 6, 2, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(scalar_of(v.div(Family::Rm, 4)), 0.0);
    return c.value();
  });
  add("C.rigid_div3rm_f", Tier::C, "div^3 Rm(grad f) = 0", 5, 2, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(v.dot_df(v.div(Family::Rm, 3)), 0.0);
    return c.value();
  });
  add("C.rigid_div4w", Tier::C, "div^4 W = 0", 6, 3, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(scalar_of(v.div(Family::W, 4)), 0.0);
    return c.value();
  });
  add("C.rigid_div3w_f", Tier::C, "div^3 W(grad f) = 0", 5, 3, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(v.dot_df(v.div(Family::W, 3)), 0.0);
    return c.value();
  });
  add("C.constant_scalar", Tier::C, "nabla R = 0", 3, 2, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add_zero(v.dR());
    return c.value();
  });
  add("C.radially_flat", Tier::C, "sec(E, grad f) = 0 for 8 random E orthogonal to grad f", 2, 2,
      [](PointGeometry& g) {
        View v(g);
        const FT& df = v.df();
        const double norm = std::sqrt(df.norm_sq());
        Compare c;
        if (norm <= 1e-6) return c.value();
        std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
        for (double x : g.point()) seed = (seed ^ std::bit_cast<std::uint64_t>(x)) * 0x100000001b3ULL;
        std::mt19937_64 rng(seed);
        const int n = v.n;
        std::vector<double> u(static_cast<std::size_t>(n));
        for (int trial = 0; trial < 8; ++trial) {
          for (double& x : u) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
          double dot = 0;
          for (int i = 0; i < n; ++i) dot += u[static_cast<std::size_t>(i)] * df.at(static_cast<std::size_t>(i));
          double un = 0;
          for (int i = 0; i < n; ++i) {
            u[static_cast<std::size_t>(i)] -= dot / (norm * norm) * df.at(static_cast<std::size_t>(i));
            un += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
          }
          if (un < 1e-12) continue;
          double num = 0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              for (int cc = 0; cc < n; ++cc)
                for (int d = 0; d < n; ++d)
                  num += v.rm()({a, b, cc, d}) * u[static_cast<std::size_t>(a)] * df.at(static_cast<std::size_t>(b)) *
                         u[static_cast<std::size_t>(cc)] * df.at(static_cast<std::size_t>(d));
          c.add(num / (un * norm * norm), 0.0);
        }
        return c.value();
      });
  add("C.ric_sq_lambda_r", Tier::C, "|Ric|^2 = lambda R", 2, 2, [](PointGeometry& g) {
    View v(g);
    Compare c;
    c.add(v.ric_sq(), v.lambda() * v.R());
    return c.value();
  });

  std::sort(r.begin(), r.end(), [](const CheckSpec& a, const CheckSpec& b) { return a.id < b.id; });
  return r;
}

// Per (point, check) outcome.
struct Cell {
  CheckValue value;
  bool ok = false;
  std::string error;
};

std::string point_text(const ModelSpec& m, const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += (i < m.coords.size() ? m.coords[i] : "?") + "=" + format_number(p[i]);
  }
  return s + ")";
}

std::vector<std::vector<Cell>> evaluate_grid(const std::vector<const CheckSpec*>& checks, const ModelSpec& m,
                                             const SamplePlan& plan, unsigned threads) {
  const std::size_t np = plan.points.size();
  std::vector<std::vector<Cell>> grid(np, std::vector<Cell>(checks.size()));
  if (checks.empty() || np == 0) return grid;
  int order = 2;
  for (const auto* c : checks) order = std::max(order, c->metric_order);
  auto work = [&](std::size_t first, std::size_t step) {
    for (std::size_t k = first; k < np; k += step) {
      auto& row = grid[k];
      try {
        PointGeometry geo(m, plan.points[k], order);
        for (std::size_t c = 0; c < checks.size(); ++c) {
          try {
            row[c].value = checks[c]->evaluate(geo);
            row[c].ok = true;
          } catch (const Error& e) {
            row[c].error = std::string(error_code_name(e.code())) + ": " + e.what();
          }
        }
      } catch (const Error& e) {
        for (auto& cell : row) cell.error = std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
  };
  unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::size_t>(t, np));
  if (t <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(work, i, t);
    for (auto& th : pool) th.join();
  }
  return grid;
}

CheckReport reduce(const CheckSpec& spec, const ModelSpec& m, const SamplePlan& plan,
                   const std::vector<std::vector<Cell>>& grid, std::size_t col, double tol) {
  CheckReport r;
  r.check_id = spec.id;
  r.model = m.name;
  r.tolerance = tol;
  r.points = plan.points.size();
  double sum = 0.0;
  bool have = false;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Cell& cell = grid[k][col];
    if (!cell.ok) {
      if (r.status != CheckStatus::Error) {
        r.status = CheckStatus::Error;
        r.message = cell.error + " at " + point_text(m, plan.points[k]);
        r.argmax_point = plan.points[k];
      }
      continue;
    }
    const double v = cell.value.residual;
    if (std::isnan(v)) {
      if (r.status != CheckStatus::Error) {
        r.status = CheckStatus::Error;
        r.message = "non-finite residual at " + point_text(m, plan.points[k]);
        r.argmax_point = plan.points[k];
      }
      continue;
    }
    sum += v;
    if (!have || v > r.max_residual) {
      r.max_residual = v;
      if (r.status != CheckStatus::Error) r.argmax_point = plan.points[k];
    }
    have = true;
    r.max_magnitude = std::max(r.max_magnitude, cell.value.magnitude);
    r.max_guard = std::max(r.max_guard, cell.value.guard);
  }
  r.mean_residual = r.points ? sum / static_cast<double>(r.points) : 0.0;
  r.pass = r.status == CheckStatus::Evaluated && r.max_residual <= tol;
  return r;
}

CheckReport status_row(const std::string& id, const ModelSpec& m, CheckStatus status, std::string message,
                       double tol) {
  CheckReport r;
  r.check_id = id;
  r.model = m.name;
  r.status = status;
  r.tolerance = tol;
  r.message = std::move(message);
  return r;
}

std::string json_number(double v) { return format_number(v); }

}  // namespace

char tier_letter(Tier t) noexcept { return t == Tier::A ? 'A' : t == Tier::B ? 'B' : 'C'; }

Tier parse_tier(std::string_view s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'A': return Tier::A;
      case 'B': return Tier::B;
      case 'C': return Tier::C;
      default: break;
    }
  }
  throw Error(ErrorCode::UnknownCheck, "unknown tier '" + std::string(s) + "'");
}

std::string CheckSpec::inapplicable_reason(const ModelSpec& m) const {
  if (requires_potential && (!m.potential || !m.lambda)) return "requires a potential f and lambda";
  if (exact_dim && m.dimension != exact_dim) return "requires dimension " + std::to_string(exact_dim);
  if (m.dimension < min_dim) return "requires dimension >= " + std::to_string(min_dim);
  return {};
}

const std::vector<CheckSpec>& list_checks() {
  static const std::vector<CheckSpec> registry = build_registry();
  return registry;
}

const CheckSpec& find_check(std::string_view id) {
  for (const auto& c : list_checks())
    if (c.id == id) return c;
  throw Error(ErrorCode::UnknownCheck, "unknown check '" + std::string(id) + "'");
}

const char* check_status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Evaluated: return "Evaluated";
    case CheckStatus::NotApplicable: return "NotApplicable";
    case CheckStatus::NotASoliton: return "NotASoliton";
    case CheckStatus::Error: return "Error";
  }
  return "?";
}

std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const ModelSpec& m,
                                    const SamplePlan& plan, double tol, unsigned threads) {
  std::vector<const CheckSpec*> specs;
  for (const auto& id : ids) {
    const CheckSpec* c = &find_check(id);
    if (std::find(specs.begin(), specs.end(), c) == specs.end()) specs.push_back(c);
  }
  std::sort(specs.begin(), specs.end(), [](const CheckSpec* a, const CheckSpec* b) { return a->id < b->id; });

  std::vector<CheckReport> out;
  std::vector<const CheckSpec*> run;
  bool any_c = false;
  for (const CheckSpec* c : specs) {
    if (c->tier == Tier::C) {
      any_c = true;
      continue;
    }
    const std::string why = c->inapplicable_reason(m);
    if (!why.empty())
      out.push_back(status_row(c->id, m, CheckStatus::NotApplicable, why, tol));
    else
      run.push_back(c);
  }

  if (any_c) {
    const CheckSpec& gate = find_check(kSolitonGateId);
    std::optional<CheckReport> gate_report;
    std::string why;
    if (!m.potential || !m.lambda) {
      why = "model has no potential f and lambda";
    } else {
      const auto grid = evaluate_grid({&gate}, m, plan, threads);
      gate_report = reduce(gate, m, plan, grid, 0, kSolitonGate);
      if (!gate_report->pass)
        why = gate_report->status == CheckStatus::Error
                  ? gate_report->message
                  : "soliton residual " + format_number(gate_report->max_residual) + " exceeds " +
                        format_number(kSolitonGate);
    }
    if (!why.empty()) {
      CheckReport row = status_row(kSolitonGateId, m, CheckStatus::NotASoliton, why, kSolitonGate);
      if (gate_report) {
        row.points = gate_report->points;
        row.max_residual = gate_report->max_residual;
        row.mean_residual = gate_report->mean_residual;
        row.argmax_point = gate_report->argmax_point;
      }
      out.push_back(std::move(row));
    } else {
      for (const CheckSpec* c : specs) {
        if (c->tier != Tier::C) continue;
        if (c == &gate) {
          out.push_back(*gate_report);
          continue;
        }
        const std::string reason = c->inapplicable_reason(m);
        if (!reason.empty())
          out.push_back(status_row(c->id, m, CheckStatus::NotApplicable, reason, tol));
        else
          run.push_back(c);
      }
    }
  }

  const auto grid = evaluate_grid(run, m, plan, threads);
  for (std::size_t c = 0; c < run.size(); ++c) out.push_back(reduce(*run[c], m, plan, grid, c, tol));
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
  return out;
}

CheckReport run_check(std::string_view id, const ModelSpec& m, const SamplePlan& plan, double tol) {
  const CheckSpec& c = find_check(id);
  const std::string why = c.inapplicable_reason(m);
  if (!why.empty()) throw Error(ErrorCode::NotApplicable, c.id + " does not apply to '" + m.name + "': " + why);
  auto rows = run_checks({c.id}, m, plan, tol);
  for (auto& r : rows)
    if (r.check_id == c.id) return r;
  return rows.front();
}

std::vector<CheckReport> run_tier(Tier tier, const ModelSpec& m, const SamplePlan& plan, double tol,
                                  unsigned threads) {
  std::vector<std::string> ids;
  for (const auto& c : list_checks())
    if (c.tier == tier) ids.push_back(c.id);
  return run_checks(ids, m, plan, tol, threads);
}

bool all_passed(const std::vector<CheckReport>& reports) noexcept {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return !r.counts() || r.pass; });
}

std::string render_reports_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["model"] = r.model;
    j["points"] = r.points;
    const bool has_numbers = r.points > 0 && r.status != CheckStatus::NotApplicable;
    j["max_residual"] = has_numbers ? nlohmann::ordered_json(r.max_residual) : nullptr;
    j["mean_residual"] = has_numbers ? nlohmann::ordered_json(r.mean_residual) : nullptr;
    j["argmax_point"] = r.argmax_point.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.argmax_point);
    j["pass"] = r.counts() ? nlohmann::ordered_json(r.pass) : nullptr;
    j["tolerance"] = r.tolerance;
    j["status"] = check_status_name(r.status);
    if (!r.message.empty()) j["message"] = r.message;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string render_reports_text(const std::vector<CheckReport>& reports) {
  std::size_t wid = 8, wmodel = 5;
  for (const auto& r : reports) {
    wid = std::max(wid, r.check_id.size());
    wmodel = std::max(wmodel, r.model.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  std::ostringstream os;
  os << pad("check_id", wid) << "  " << pad("model", wmodel) << "  " << pad("status", 13) << "  "
     << pad("points", 6) << "  " << pad("max_residual", 24) << "  " << pad("mean_residual", 24) << "  "
     << pad("tolerance", 9) << "  pass   argmax_point\n";
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    const bool nums = r.points > 0 && r.status != CheckStatus::NotApplicable;
    std::string point = "-";
    if (!r.argmax_point.empty()) {
      point = "(";
      for (std::size_t i = 0; i < r.argmax_point.size(); ++i)
        point += (i ? ", " : "") + format_number(r.argmax_point[i]);
      point += ")";
    }
    const char* verdict = !r.counts() ? "-" : r.pass ? "PASS" : "FAIL";
    if (!r.counts())
      ++skipped;
    else if (r.pass)
      ++passed;
    else
      ++failed;
    os << pad(r.check_id, wid) << "  " << pad(r.model, wmodel) << "  " << pad(check_status_name(r.status), 13)
       << "  " << pad(std::to_string(r.points), 6) << "  " << pad(nums ? json_number(r.max_residual) : "-", 24)
       << "  " << pad(nums ? json_number(r.mean_residual) : "-", 24) << "  " << pad(format_number(r.tolerance), 9)
       << "  " << pad(verdict, 5) << "  " << point << "\n";
    if (!r.message.empty()) os << "    note: " << r.message << "\n";
  }
  os << "summary: " << passed << " passed, " << failed << " failed, " << skipped << " not evaluated\n";
  return os.str();
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Gaussian_R4: return "Gaussian_R4";
    case Verdict::R2xS2: return "R2xS2";
    case Verdict::RxS3: return "RxS3";
    case Verdict::Einstein: return "Einstein";
    case Verdict::NotRigidOrUnknown: return "NotRigidOrUnknown";
    case Verdict::NotASoliton: return "NotASoliton";
  }
  return "?";
}

bool verdict_definite(Verdict v) noexcept {
  return v != Verdict::NotRigidOrUnknown && v != Verdict::NotASoliton;
}

ClassificationResult classify_dim4(const ModelSpec& m, const SamplePlan& plan, double tol) {
  if (m.dimension != 4)
    throw Error(ErrorCode::DimensionError, "classification needs a 4-dimensional model, got " +
                                               std::to_string(m.dimension));
  ClassificationResult out;
  out.model = m.name;
  if (!m.potential || !m.lambda) {
    out.verdict = Verdict::NotASoliton;
    out.reason = "model has no potential f and lambda";
    return out;
  }
  const double lambda = *m.lambda;

  struct Sample {
    double gate = 0, grad_r = 0, ratio = 0, ric_sq_res = 0;
    std::array<double, 4> eig{};
    std::string error;
  };
  std::vector<Sample> samples(plan.points.size());
  auto work = [&](std::size_t first, std::size_t step) {
    for (std::size_t k = first; k < samples.size(); k += step) {
      Sample& s = samples[k];
      try {
        PointGeometry geo(m, plan.points[k], 3);
        View v(geo);
        Compare gate;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) gate.add(v.ric()({i, j}) + v.hf()({i, j}), i == j ? lambda : 0.0);
        s.gate = gate.value().residual;
        s.grad_r = std::sqrt(v.dR().norm_sq());
        s.ratio = v.R() / lambda;
        Compare rs;
        rs.add(v.ric_sq(), lambda * v.R());
        s.ric_sq_res = rs.value().residual;
        Eigen::Matrix4d ric;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) ric(i, j) = v.ric()({i, j});
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(ric, Eigen::EigenvaluesOnly);
        for (int i = 0; i < 4; ++i) s.eig[static_cast<std::size_t>(i)] = es.eigenvalues()(i) / lambda;
      } catch (const Error& e) {
        s.error = std::string(error_code_name(e.code())) + ": " + e.what() + " at " + point_text(m, plan.points[k]);
      }
    }
  };
  const unsigned t = static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), samples.size()));
  if (t <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(work, i, t);
    for (auto& th : pool) th.join();
  }

  out.ricci_eigenvalues.assign(4, 0.0);
  for (const auto& s : samples) {
    if (!s.error.empty()) {
      out.verdict = Verdict::NotASoliton;
      out.reason = s.error;
      return out;
    }
    out.gate_residual = std::max(out.gate_residual, s.gate);
    out.max_grad_scalar = std::max(out.max_grad_scalar, s.grad_r);
    out.ric_sq_residual = std::max(out.ric_sq_residual, s.ric_sq_res);
    out.scalar_ratio += s.ratio / static_cast<double>(samples.size());
    for (std::size_t i = 0; i < 4; ++i) out.ricci_eigenvalues[i] += s.eig[i] / static_cast<double>(samples.size());
  }

  if (!(out.gate_residual <= tol)) {
    out.verdict = Verdict::NotASoliton;
    out.reason = "soliton residual " + format_number(out.gate_residual) + " exceeds tolerance";
    return out;
  }
  if (!(out.max_grad_scalar <= tol * lambda)) {
    out.verdict = Verdict::NotRigidOrUnknown;
    out.reason = "scalar curvature is not constant (max |nabla R| = " + format_number(out.max_grad_scalar) + ")";
    return out;
  }
  const double nearest = std::clamp(std::round(out.scalar_ratio), 0.0, 4.0);
  const double gap = std::abs(out.scalar_ratio - nearest);
  double worst_gap = gap;
  for (const auto& s : samples) worst_gap = std::max(worst_gap, std::abs(s.ratio - nearest));
  if (worst_gap > 0.05) {
    out.verdict = Verdict::NotRigidOrUnknown;
    out.reason = "R/lambda = " + format_number(out.scalar_ratio) + " is not near an integer in 0..4";
    return out;
  }
  const int snapped = static_cast<int>(nearest);
  out.snapped_ratio = snapped;
  if (snapped == 1) {
    out.verdict = Verdict::NotRigidOrUnknown;
    out.reason = "R = lambda cannot occur on a 4-dimensional shrinker";
    return out;
  }
  if (!(out.ric_sq_residual <= tol)) {
    out.verdict = Verdict::NotRigidOrUnknown;
    out.reason = "|Ric|^2 = lambda R fails (residual " + format_number(out.ric_sq_residual) + ")";
    return out;
  }
  std::array<double, 4> tuple{};
  Verdict verdict = Verdict::NotRigidOrUnknown;
  switch (snapped) {
    case 0: tuple = {0, 0, 0, 0}; verdict = Verdict::Gaussian_R4; break;
    case 2: tuple = {0, 0, 1, 1}; verdict = Verdict::R2xS2; break;
    case 3: tuple = {0, 1, 1, 1}; verdict = Verdict::RxS3; break;
    case 4: tuple = {1, 1, 1, 1}; verdict = Verdict::Einstein; break;
    default: break;
  }
  for (const auto& s : samples)
    for (std::size_t i = 0; i < 4; ++i) out.max_eigen_gap = std::max(out.max_eigen_gap, std::abs(s.eig[i] - tuple[i]));
  if (out.max_eigen_gap > 0.05) {
    out.verdict = Verdict::NotRigidOrUnknown;
    out.reason = "Ricci eigenvalues do not match the case tuple";
    return out;
  }
  out.verdict = verdict;
  return out;
}

std::string render_classification_json(const ClassificationResult& c) {
  nlohmann::ordered_json j;
  j["model"] = c.model;
  j["verdict"] = verdict_name(c.verdict);
  j["scalar_ratio"] = c.scalar_ratio;
  j["snapped_ratio"] = c.snapped_ratio ? nlohmann::ordered_json(*c.snapped_ratio) : nullptr;
  j["ricci_eigenvalues"] = c.ricci_eigenvalues;
  j["gate_residual"] = c.gate_residual;
  j["max_grad_scalar"] = c.max_grad_scalar;
  j["ric_sq_residual"] = c.ric_sq_residual;
  j["max_eigen_gap"] = c.max_eigen_gap;
  j["reason"] = c.reason;
  return j.dump(2) + "\n";
}

std::string render_classification_text(const ClassificationResult& c) {
  std::ostringstream os;
  os << "model: " << c.model << "\n";
  os << "verdict: " << verdict_name(c.verdict) << "\n";
  os << "R/lambda: " << format_number(c.scalar_ratio);
  if (c.snapped_ratio) os << " (snapped " << *c.snapped_ratio << ")";
  os << "\nricci eigenvalues / lambda:";
  for (double e : c.ricci_eigenvalues) os << " " << format_number(e);
  os << "\nsoliton residual: " << format_number(c.gate_residual) << "\n";
  os << "max |nabla R|: " << format_number(c.max_grad_scalar) << "\n";
  os << "|Ric|^2 - lambda R residual: " << format_number(c.ric_sq_residual) << "\n";
  os << "max eigenvalue gap: " << format_number(c.max_eigen_gap) << "\n";
  if (!c.reason.empty()) os << "reason: " << c.reason << "\n";
  return os.str();
}

}  // namespace solcheck
