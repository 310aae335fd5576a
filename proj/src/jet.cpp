// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "solcheck/error.hpp"

namespace solcheck {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All multi-indices of total degree d in dim variables, first component
// descending.
void enumerate_degree(int dim, int d, std::vector<int>& prefix, std::vector<int>& out) {
  if (static_cast<int>(prefix.size()) == dim - 1) {
    prefix.push_back(d);
    out.insert(out.end(), prefix.begin(), prefix.end());
    prefix.pop_back();
    return;
  }
  for (int a = d; a >= 0; --a) {
    prefix.push_back(a);
    enumerate_degree(dim, d - a, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t encode(std::span<const int> alpha, int base) {
  std::uint64_t key = 0;
  for (auto it = alpha.rbegin(); it != alpha.rend(); ++it)
    key = key * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(*it);
  return key;
}

}  // namespace

std::size_t JetBasis::count(int dim, int order) {
  return static_cast<std::size_t>(std::llround(binomial(dim + order, order)));
}

JetBasis::JetBasis(int dim, int order) : dim_(dim), order_(order) {
  const auto n = static_cast<std::size_t>(dim);
  std::vector<int> prefix;
  for (int d = 0; d <= order; ++d) {
    degree_begin_.push_back(alphas_.size() / n);
    enumerate_degree(dim, d, prefix, alphas_);
  }
  degree_begin_.push_back(alphas_.size() / n);
  const std::size_t size = alphas_.size() / n;
  degree_.resize(size);
  for (int d = 0; d <= order; ++d) {
    for (std::size_t k = degree_begin_[static_cast<std::size_t>(d)];
         k < degree_begin_[static_cast<std::size_t>(d) + 1]; ++k)
      degree_[k] = d;
  }

  std::map<std::uint64_t, std::size_t> lookup;
  const int base = order + 2;
  for (std::size_t k = 0; k < size; ++k) lookup[encode(multi_index(k), base)] = k;

  shift_.assign(size * n, static_cast<std::size_t>(-1));
  std::vector<int> tmp(n);
  for (std::size_t k = 0; k < size; ++k) {
    if (degree_[k] >= order) continue;
    for (std::size_t a = 0; a < n; ++a) {
      auto alpha = multi_index(k);
      std::copy(alpha.begin(), alpha.end(), tmp.begin());
      ++tmp[a];
      shift_[k * n + a] = lookup.at(encode(tmp, base));
    }
  }

  // For every gamma, all alpha <= gamma componentwise with beta = gamma - alpha.
  term_begin_.push_back(0);
  std::vector<int> beta(n);
  for (std::size_t g = 0; g < size; ++g) {
    const auto gamma = multi_index(g);
    for (std::size_t a = 0; a <= g; ++a) {
      const auto alpha = multi_index(a);
      bool below = true;
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > gamma[i]) {
          below = false;
          break;
        }
        beta[i] = gamma[i] - alpha[i];
        w *= binomial(gamma[i], alpha[i]);
      }
      if (!below) continue;
      const std::size_t b = lookup.at(encode(beta, base));
      terms_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), w});
    }
    term_begin_.push_back(terms_.size());
  }
}

std::shared_ptr<const JetBasis> JetBasis::get(int dim, int order) {
  if (order < 0 || order > kMaxJetOrder)
    throw Error(ErrorCode::OrderExhausted,
                "jet order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxJetOrder) + "]");
  if (dim < 1) throw Error(ErrorCode::DimensionError, "jet dimension must be positive");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dim, order}];
  if (!slot) slot = std::make_shared<const JetBasis>(dim, order);
  return slot;
}

std::size_t JetBasis::find(std::span<const int> alpha) const {
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw Error(ErrorCode::SlotError, "negative multi-index entry");
    total += a;
  }
  if (static_cast<int>(alpha.size()) != dim_)
    throw Error(ErrorCode::SlotError, "multi-index length does not match jet dimension");
  if (total > order_)
    throw Error(ErrorCode::OrderExhausted, "derivative order exceeds jet order");
  for (std::size_t k = degree_begin_[static_cast<std::size_t>(total)];
       k < degree_begin_[static_cast<std::size_t>(total) + 1]; ++k) {
    auto m = multi_index(k);
    if (std::equal(m.begin(), m.end(), alpha.begin())) return k;
  }
  throw Error(ErrorCode::SlotError, "multi-index not found");
}

void jet_mul_acc(const JetBasis& basis, const double* x, const double* y, double* out,
                 double scale) {
  const std::size_t size = basis.size();
  for (std::size_t k = 0; k < size; ++k) {
    double acc = 0.0;
    for (const auto& t : basis.terms(k)) acc += t.weight * x[t.a] * y[t.b];
    out[k] += scale * acc;
  }
}

// ---------------------------------------------------------------------------

Jet::Jet(std::shared_ptr<const JetBasis> basis, std::shared_ptr<const Point> center,
         std::vector<double> coeffs)
    : basis_(std::move(basis)), center_(std::move(center)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size())
    throw Error(ErrorCode::SlotError, "jet coefficient count does not match its basis");
}

Jet Jet::constant(std::shared_ptr<const JetBasis> basis, std::shared_ptr<const Point> center,
                  double value) {
  std::vector<double> c(basis->size(), 0.0);
  c[0] = value;
  return Jet(std::move(basis), std::move(center), std::move(c));
}

Jet Jet::coordinate(std::shared_ptr<const JetBasis> basis, std::shared_ptr<const Point> center,
                    int axis) {
  std::vector<double> c(basis->size(), 0.0);
  c[0] = (*center)[static_cast<std::size_t>(axis)];
  if (basis->order() >= 1) c[basis->shift(axis, 0)] = 1.0;
  return Jet(std::move(basis), std::move(center), std::move(c));
}

double Jet::derivative(std::span<const int> alpha) const {
  return coeffs_[basis_->find(alpha)];
}

Jet Jet::truncated(int order) const {
  if (order > basis_->order())
    throw Error(ErrorCode::OrderExhausted, "cannot raise the order of a jet");
  auto b = JetBasis::get(dim(), order);
  return Jet(b, center_, std::vector<double>(coeffs_.begin(),
                                             coeffs_.begin() + static_cast<long>(b->size())));
}

Jet Jet::partial(int axis) const {
  if (order() == 0) throw Error(ErrorCode::OrderExhausted, "cannot differentiate an order-0 jet");
  auto b = JetBasis::get(dim(), order() - 1);
  std::vector<double> c(b->size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeffs_[basis_->shift(axis, k)];
  return Jet(b, center_, std::move(c));
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.basis_ != basis_) throw Error(ErrorCode::SlotError, "jet basis mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.basis_ != basis_) throw Error(ErrorCode::SlotError, "jet basis mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.basis_ != b.basis_) throw Error(ErrorCode::SlotError, "jet basis mismatch");
  std::vector<double> c(a.coeffs_.size(), 0.0);
  jet_mul_acc(*a.basis_, a.coeffs_.data(), b.coeffs_.data(), c.data());
  return Jet(a.basis_, a.center_, std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void domain_error(const char* what) {
  throw Error(ErrorCode::DomainError, std::string("jet evaluation error: ") + what);
}

}  // namespace

Jet compose(const Jet& u, std::span<const double> derivatives) {
  const int r = u.order();
  const JetBasis& basis = u.basis();
  std::vector<double> h(u.coeffs().begin(), u.coeffs().end());
  h[0] = 0.0;
  std::vector<double> out(basis.size(), 0.0);
  out[0] = derivatives[0];
  std::vector<double> power = h;
  std::vector<double> next(basis.size());
  double factorial = 1.0;
  for (int k = 1; k <= r; ++k) {
    factorial *= k;
    const double c = derivatives[static_cast<std::size_t>(k)] / factorial;
    // h^k vanishes below degree k; skipping those positions keeps lower-order
    // coefficients independent of the truncation order.
    for (std::size_t i = basis.degree_begin(k); i < basis.size(); ++i) out[i] += c * power[i];
    if (k < r) {
      std::fill(next.begin(), next.end(), 0.0);
      jet_mul_acc(basis, power.data(), h.data(), next.data());
      power.swap(next);
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) domain_error("non-finite derivative");
  }
  return Jet(u.basis_ptr(), u.center_ptr(), std::move(out));
}

Jet reciprocal(const Jet& u) {
  const double x = u.value();
  if (x == 0.0) domain_error("division by zero");
  std::vector<double> d(static_cast<std::size_t>(u.order()) + 1);
  double v = 1.0 / x;
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = v;
    v *= -static_cast<double>(k + 1) / x;
  }
  return compose(u, d);
}

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  if (!std::isfinite(e)) domain_error("exp overflow");
  std::vector<double> d(static_cast<std::size_t>(u.order()) + 1, e);
  return compose(u, d);
}

Jet log(const Jet& u) {
  const double x = u.value();
  if (x <= 0.0) domain_error("log of a non-positive value");
  std::vector<double> d(static_cast<std::size_t>(u.order()) + 1);
  d[0] = std::log(x);
  double v = 1.0 / x;
  for (std::size_t k = 1; k < d.size(); ++k) {
    d[k] = v;
    v *= -static_cast<double>(k) / x;
  }
  return compose(u, d);
}

namespace {

// Derivatives of a function whose derivative sequence cycles through `cycle`.
Jet cyclic(const Jet& u, const double (&cycle)[4], std::size_t period) {
  std::vector<double> d(static_cast<std::size_t>(u.order()) + 1);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = cycle[k % period];
  return compose(u, d);
}

}  // namespace

Jet sin(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return cyclic(u, {s, c, -s, -c}, 4);
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return cyclic(u, {c, -s, -c, s}, 4);
}

Jet sinh(const Jet& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  if (!std::isfinite(s) || !std::isfinite(c)) domain_error("sinh overflow");
  return cyclic(u, {s, c, 0.0, 0.0}, 2);
}

Jet cosh(const Jet& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  if (!std::isfinite(s) || !std::isfinite(c)) domain_error("cosh overflow");
  return cyclic(u, {c, s, 0.0, 0.0}, 2);
}

Jet tan(const Jet& u) {
  if (std::cos(u.value()) == 0.0) domain_error("tan at a pole");
  const double t = std::tan(u.value());
  // d^k tan = P_k(tan) with P_0 = t, P_{k+1} = P_k'(t) (1 + t^2).
  std::vector<double> poly{0.0, 1.0};
  std::vector<double> d(static_cast<std::size_t>(u.order()) + 1);
  for (std::size_t k = 0; k < d.size(); ++k) {
    double v = 0.0;
    for (std::size_t i = poly.size(); i-- > 0;) v = v * t + poly[i];
    d[k] = v;
    std::vector<double> deriv(poly.size() > 1 ? poly.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < poly.size(); ++i) deriv[i - 1] = static_cast<double>(i) * poly[i];
    std::vector<double> next(deriv.size() + 2, 0.0);
    for (std::size_t i = 0; i < deriv.size(); ++i) {
      next[i] += deriv[i];
      next[i + 2] += deriv[i];
    }
    poly.swap(next);
  }
  return compose(u, d);
}

Jet pow(const Jet& u, double exponent) {
  const double x = u.value();
  const bool integral = exponent == std::floor(exponent);
  if (x < 0.0 && !integral) domain_error("fractional power of a negative value");
  std::vector<double> d(static_cast<std::size_t>(u.order()) + 1, 0.0);
  double falling = 1.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (falling == 0.0) break;  // non-negative integer exponent exhausted
    const double e = exponent - static_cast<double>(k);
    if (x == 0.0 && e < 0.0) domain_error("division by zero");
    d[k] = falling * std::pow(x, e);
    falling *= e;
  }
  return compose(u, d);
}

Jet sqrt(const Jet& u) {
  if (u.value() < 0.0) domain_error("sqrt of a negative value");
  return pow(u, 0.5);
}

namespace {

Jet jet_of(const Expr& e, const std::shared_ptr<const JetBasis>& basis,
           const std::shared_ptr<const Point>& center) {
  switch (e.op()) {
    case Op::Literal:
      return Jet::constant(basis, center, e.value());
    case Op::Symbol:
      if (e.symbol_index() < 0 || e.symbol_index() >= basis->dim())
        domain_error("coordinate index out of range");
      return Jet::coordinate(basis, center, e.symbol_index());
    case Op::Add:
      return jet_of(e.lhs(), basis, center) + jet_of(e.rhs(), basis, center);
    case Op::Sub:
      return jet_of(e.lhs(), basis, center) - jet_of(e.rhs(), basis, center);
    case Op::Mul:
      return jet_of(e.lhs(), basis, center) * jet_of(e.rhs(), basis, center);
    case Op::Div:
      return jet_of(e.lhs(), basis, center) / jet_of(e.rhs(), basis, center);
    case Op::Neg:
      return -jet_of(e.lhs(), basis, center);
    case Op::Pow:
      return pow(jet_of(e.lhs(), basis, center), e.value());
    case Op::Exp:
      return exp(jet_of(e.lhs(), basis, center));
    case Op::Log:
      return log(jet_of(e.lhs(), basis, center));
    case Op::Sin:
      return sin(jet_of(e.lhs(), basis, center));
    case Op::Cos:
      return cos(jet_of(e.lhs(), basis, center));
    case Op::Tan:
      return tan(jet_of(e.lhs(), basis, center));
    case Op::Sinh:
      return sinh(jet_of(e.lhs(), basis, center));
    case Op::Cosh:
      return cosh(jet_of(e.lhs(), basis, center));
    case Op::Sqrt:
      return sqrt(jet_of(e.lhs(), basis, center));
  }
  domain_error("unknown node");
}

}  // namespace

Jet jet_evaluate(const Expr& e, std::span<const double> p, int order) {
  auto basis = JetBasis::get(static_cast<int>(p.size()), order);
  auto center = std::make_shared<const Point>(p.begin(), p.end());
  Jet j = jet_of(e, basis, center);
  for (double v : j.coeffs()) {
    if (!std::isfinite(v)) domain_error("non-finite derivative");
  }
  return j;
}

}  // namespace solcheck
