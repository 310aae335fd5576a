// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "solcheck/expr.hpp"

namespace solcheck {

/// Highest derivative order a jet may carry.
inline constexpr int kMaxJetOrder = 8;

using Point = std::vector<double>;

/// Enumeration of the multi-indices |alpha| <= order in `dim` variables plus
/// the Leibniz product table. Multi-indices are graded by total degree, so the
/// basis of order q is a prefix of the basis of any order r > q and a jet is
/// truncated by dropping its tail.
class JetBasis {
 public:
  struct Term {
    std::uint32_t a;
    std::uint32_t b;
    double weight;  // prod_i binomial(gamma_i, alpha_i)
  };

  /// Cached, thread-safe. Throws OrderExhausted beyond kMaxJetOrder.
  static std::shared_ptr<const JetBasis> get(int dim, int order);

  /// Number of multi-indices with |alpha| <= order.
  static std::size_t count(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return degree_.size(); }

  std::span<const int> multi_index(std::size_t k) const {
    return {alphas_.data() + k * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  int degree(std::size_t k) const { return degree_[k]; }
  /// First position holding a multi-index of total degree d (d <= order + 1).
  std::size_t degree_begin(int d) const { return degree_begin_[static_cast<std::size_t>(d)]; }

  /// Position of alpha; throws OrderExhausted if |alpha| > order.
  std::size_t find(std::span<const int> alpha) const;
  /// Position of alpha + e_axis; requires degree(k) < order.
  std::size_t shift(int axis, std::size_t k) const {
    return shift_[k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }
  /// Leibniz terms contributing to output position k.
  std::span<const Term> terms(std::size_t k) const {
    return {terms_.data() + term_begin_[k], term_begin_[k + 1] - term_begin_[k]};
  }

  JetBasis(int dim, int order);

 private:
  int dim_;
  int order_;
  std::vector<int> alphas_;
  std::vector<int> degree_;
  std::vector<std::size_t> degree_begin_;
  std::vector<std::size_t> shift_;
  std::vector<Term> terms_;
  std::vector<std::size_t> term_begin_;
};

/// out[k] += scale * (x * y)[k] for every position of `basis`.
void jet_mul_acc(const JetBasis& basis, const double* x, const double* y, double* out,
                 double scale = 1.0);

/// All raw partial derivatives (not divided by alpha!) of a scalar at a point.
class Jet {
 public:
  Jet(std::shared_ptr<const JetBasis> basis, std::shared_ptr<const Point> center,
      std::vector<double> coeffs);

  static Jet constant(std::shared_ptr<const JetBasis> basis, std::shared_ptr<const Point> center,
                      double value);
  /// The jet of the coordinate function x_axis.
  static Jet coordinate(std::shared_ptr<const JetBasis> basis,
                        std::shared_ptr<const Point> center, int axis);

  int order() const noexcept { return basis_->order(); }
  int dim() const noexcept { return basis_->dim(); }
  const JetBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const JetBasis>& basis_ptr() const noexcept { return basis_; }
  const Point& center() const noexcept { return *center_; }
  const std::shared_ptr<const Point>& center_ptr() const noexcept { return center_; }

  double value() const noexcept { return coeffs_[0]; }
  /// Raw partial derivative d^alpha at the center.
  double derivative(std::span<const int> alpha) const;
  double derivative(std::initializer_list<int> alpha) const {
    return derivative(std::span<const int>(alpha.begin(), alpha.size()));
  }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  Jet truncated(int order) const;
  /// d/dx_axis, one order lower.
  Jet partial(int axis) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(Jet a) { return a *= -1.0; }

 private:
  std::shared_ptr<const JetBasis> basis_;
  std::shared_ptr<const Point> center_;
  std::vector<double> coeffs_;
};

/// f(u) for a univariate f with derivatives[k] = f^(k)(u(center)),
/// k = 0..order, by truncated Taylor composition.
Jet compose(const Jet& u, std::span<const double> derivatives);

Jet reciprocal(const Jet& u);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet tan(const Jet& u);
Jet sinh(const Jet& u);
Jet cosh(const Jet& u);
Jet sqrt(const Jet& u);
Jet pow(const Jet& u, double exponent);

/// Jet of e at p to the given order, by Taylor arithmetic through the tree.
/// Throws DomainError where evaluate() would, OrderExhausted above kMaxJetOrder.
Jet jet_evaluate(const Expr& e, std::span<const double> p, int order);

}  // namespace solcheck
