// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "solcheck/error.hpp"

namespace solcheck {

namespace {

std::size_t ipow(int n, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Common order of two operands; kernels read the prefix of the higher one.
std::shared_ptr<const JetBasis> common_basis(const TensorJet& a, const TensorJet& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::SlotError, "tensor dimension mismatch");
  return a.order() <= b.order() ? a.basis_ptr() : b.basis_ptr();
}

}  // namespace

void validate_structure(const ModelSpec& m) {
  const int n = m.dimension;
  if (n < 2) invalid("dimension must be at least 2");
  const auto un = static_cast<std::size_t>(n);
  if (m.coords.size() != un) invalid("expected " + std::to_string(n) + " coordinate names");
  std::set<std::string> seen;
  for (const auto& c : m.coords) {
    if (!valid_identifier(c)) invalid("invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) invalid("duplicate coordinate name '" + c + "'");
  }
  if (m.metric.size() != un) invalid("metric must have " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < un; ++i) {
    if (m.metric[i].size() != un) invalid("metric row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < un; ++j) {
      if (m.metric[i][j].max_symbol_index() >= n)
        invalid("metric entry uses a coordinate index out of range");
      if (!(m.metric[i][j] == m.metric[j][i]))
        invalid("metric is not symmetric: entry [" + std::to_string(i) + "][" +
                std::to_string(j) + "] differs from [" + std::to_string(j) + "][" +
                std::to_string(i) + "]");
    }
  }
  if (m.potential) {
    if (m.potential->max_symbol_index() >= n) invalid("potential uses an unknown coordinate");
    if (!m.lambda) invalid("a potential requires lambda");
  }
  if (m.lambda && !std::isfinite(*m.lambda)) invalid("lambda must be finite");
  if (m.domain.size() != un) invalid("domain must give an interval for every coordinate");
  for (std::size_t i = 0; i < un; ++i) {
    const auto& iv = m.domain[i];
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi)) || iv.lo > iv.hi)
      invalid("domain interval for '" + m.coords[i] + "' is empty or not finite");
  }
  if (!m.margins.empty() && m.margins.size() != un) invalid("margins must match the dimension");
  for (double g : m.margins) {
    if (!(g >= 0.0) || !std::isfinite(g)) invalid("margins must be non-negative");
  }
}

bool in_domain(const ModelSpec& m, std::span<const double> p) noexcept {
  if (p.size() != m.domain.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= m.domain[i].lo && p[i] <= m.domain[i].hi)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// TensorJet

TensorJet::TensorJet(std::vector<Variance> valence, std::shared_ptr<const JetBasis> basis,
                     std::shared_ptr<const Point> center)
    : valence_(std::move(valence)), basis_(std::move(basis)), center_(std::move(center)) {
  components_ = ipow(basis_->dim(), rank());
  stride_ = basis_->size();
  data_.assign(components_ * stride_, 0.0);
}

TensorJet TensorJet::covariant(int rank, std::shared_ptr<const JetBasis> basis,
                               std::shared_ptr<const Point> center) {
  return TensorJet(std::vector<Variance>(static_cast<std::size_t>(rank), Variance::Covariant),
                   std::move(basis), std::move(center));
}

TensorJet TensorJet::scalar(const Jet& j) {
  TensorJet t({}, j.basis_ptr(), j.center_ptr());
  std::copy(j.coeffs().begin(), j.coeffs().end(), t.data_.begin());
  return t;
}

bool TensorJet::fully_covariant() const noexcept {
  return std::all_of(valence_.begin(), valence_.end(),
                     [](Variance v) { return v == Variance::Covariant; });
}

std::size_t TensorJet::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw Error(ErrorCode::SlotError, "index tuple length does not match tensor rank");
  std::size_t flat = 0;
  const int n = dim();
  for (int i : idx) {
    if (i < 0 || i >= n) throw Error(ErrorCode::SlotError, "tensor index out of range");
    flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<int> TensorJet::unflatten(std::size_t flat) const {
  std::vector<int> idx(valence_.size());
  const auto n = static_cast<std::size_t>(dim());
  for (std::size_t s = idx.size(); s-- > 0;) {
    idx[s] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

Jet TensorJet::component(std::span<const int> idx) const {
  const auto c = coeffs(flat_index(idx));
  return Jet(basis_, center_, std::vector<double>(c.begin(), c.end()));
}

void TensorJet::set_component(std::span<const int> idx, const Jet& j) {
  if (j.order() != order() || j.dim() != dim())
    throw Error(ErrorCode::SlotError, "component jet does not match tensor order");
  std::copy(j.coeffs().begin(), j.coeffs().end(), coeffs(flat_index(idx)).begin());
}

TensorJet TensorJet::truncated(int order) const {
  if (order == this->order()) return *this;
  if (order > this->order()) throw Error(ErrorCode::OrderExhausted, "cannot raise tensor order");
  TensorJet out(valence_, JetBasis::get(dim(), order), center_);
  for (std::size_t c = 0; c < components_; ++c)
    std::copy_n(raw(c), out.stride_, out.raw(c));
  return out;
}

TensorJet TensorJet::with_valence(std::vector<Variance> valence) const {
  if (valence.size() != valence_.size()) throw Error(ErrorCode::SlotError, "rank mismatch");
  TensorJet out = *this;
  out.valence_ = std::move(valence);
  return out;
}

double TensorJet::max_abs_value() const noexcept {
  double m = 0.0;
  for (std::size_t c = 0; c < components_; ++c) m = std::max(m, std::abs(value_at(c)));
  return m;
}

namespace {

void check_same_shape(const TensorJet& a, const TensorJet& b) {
  if (a.dim() != b.dim() || a.valence() != b.valence())
    throw Error(ErrorCode::SlotError, "tensor shapes differ");
}

}  // namespace

TensorJet& TensorJet::operator+=(const TensorJet& o) {
  check_same_shape(*this, o);
  if (o.order() < order()) *this = truncated(o.order());
  for (std::size_t c = 0; c < components_; ++c) {
    double* d = raw(c);
    const double* s = o.raw(c);
    for (std::size_t k = 0; k < stride_; ++k) d[k] += s[k];
  }
  return *this;
}

TensorJet& TensorJet::operator-=(const TensorJet& o) {
  check_same_shape(*this, o);
  if (o.order() < order()) *this = truncated(o.order());
  for (std::size_t c = 0; c < components_; ++c) {
    double* d = raw(c);
    const double* s = o.raw(c);
    for (std::size_t k = 0; k < stride_; ++k) d[k] -= s[k];
  }
  return *this;
}

TensorJet& TensorJet::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

TensorJet operator+(const TensorJet& a, const TensorJet& b) {
  TensorJet out = a.order() <= b.order() ? a : a.truncated(b.order());
  out += b;
  return out;
}

TensorJet operator-(const TensorJet& a, const TensorJet& b) {
  TensorJet out = a.order() <= b.order() ? a : a.truncated(b.order());
  out -= b;
  return out;
}

// ---------------------------------------------------------------------------
// Metric and connection

namespace {

Eigen::MatrixXd order0_matrix(const TensorJet& g) {
  const int n = g.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g.value({i, j});
  return m;
}

}  // namespace

TensorJet metric_jet(const ModelSpec& m, std::span<const double> p, int order) {
  const int n = m.dimension;
  if (static_cast<int>(p.size()) != n)
    throw Error(ErrorCode::DimensionError, "point has the wrong number of coordinates");
  auto basis = JetBasis::get(n, order);
  auto center = std::make_shared<const Point>(p.begin(), p.end());
  TensorJet g = TensorJet::covariant(2, basis, center);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Jet e = jet_evaluate(m.metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                 p, order);
      std::copy(e.coeffs().begin(), e.coeffs().end(), g.raw(g.flat_index({i, j})));
      std::copy(e.coeffs().begin(), e.coeffs().end(), g.raw(g.flat_index({j, i})));
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(order0_matrix(g));
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "metric is not positive definite at the point");
  return g;
}

TensorJet inverse_metric_jet(const TensorJet& g) {
  const int n = g.dim();
  const auto un = static_cast<std::size_t>(n);
  if (g.rank() != 2 || !g.fully_covariant())
    throw Error(ErrorCode::SlotError, "inverse_metric_jet expects a (0,2) tensor");
  const Eigen::MatrixXd g0 = order0_matrix(g);
  Eigen::LLT<Eigen::MatrixXd> llt(g0);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "metric is not positive definite at the point");
  const Eigen::MatrixXd inv0 = llt.solve(Eigen::MatrixXd::Identity(n, n));

  const JetBasis& basis = g.basis();
  const std::size_t size = basis.size();
  // m = -inv0 * (g - g0); the constant part vanishes, so m^s starts at degree s.
  std::vector<std::vector<double>> mjet(un * un, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) {
      auto& dst = mjet[i * un + j];
      for (std::size_t k = 0; k < un; ++k) {
        const double c = -inv0(static_cast<long>(i), static_cast<long>(k));
        const double* src = g.raw(k * un + j);
        for (std::size_t q = 1; q < size; ++q) dst[q] += c * src[q];
      }
    }
  }
  TensorJet out({Variance::Contravariant, Variance::Contravariant}, g.basis_ptr(), g.center_ptr());
  std::vector<std::vector<double>> term(un * un, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) term[i * un + j][0] = inv0(static_cast<long>(i), static_cast<long>(j));
  std::vector<std::vector<double>> next(un * un, std::vector<double>(size));
  for (int s = 0; s <= g.order(); ++s) {
    for (std::size_t c = 0; c < un * un; ++c) {
      double* d = out.raw(c);
      for (std::size_t q = 0; q < size; ++q) d[q] += term[c][q];
    }
    if (s == g.order()) break;
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = 0; j < un; ++j) {
        auto& dst = next[i * un + j];
        std::fill(dst.begin(), dst.end(), 0.0);
        for (std::size_t k = 0; k < un; ++k)
          jet_mul_acc(basis, mjet[i * un + k].data(), term[k * un + j].data(), dst.data());
      }
    }
    term.swap(next);
  }
  // Symmetrize round-off so g^{ij} == g^{ji} exactly.
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = i + 1; j < un; ++j) {
      double* a = out.raw(i * un + j);
      double* b = out.raw(j * un + i);
      for (std::size_t q = 0; q < size; ++q) {
        const double v = 0.5 * (a[q] + b[q]);
        a[q] = v;
        b[q] = v;
      }
    }
  }
  return out;
}

ChristoffelJet christoffel_jet(const TensorJet& g, const TensorJet& g_inv) {
  if (g.order() < 1) throw Error(ErrorCode::OrderExhausted, "Christoffel symbols need metric order >= 1");
  const int n = g.dim();
  const auto un = static_cast<std::size_t>(n);
  const int r = std::min(g.order(), g_inv.order()) - 1;
  auto basis = JetBasis::get(n, r);
  const std::size_t size = basis->size();
  const JetBasis& gb = g.basis();
  // First kind: Gamma_{l,ij} = (d_i g_jl + d_j g_il - d_l g_ij) / 2.
  std::vector<double> first(un * un * un * size, 0.0);
  for (std::size_t l = 0; l < un; ++l) {
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = i; j < un; ++j) {
        double* d = first.data() + ((l * un + i) * un + j) * size;
        const double* gjl = g.raw(j * un + l);
        const double* gil = g.raw(i * un + l);
        const double* gij = g.raw(i * un + j);
        for (std::size_t q = 0; q < size; ++q) {
          d[q] = 0.5 * (gjl[gb.shift(static_cast<int>(i), q)] + gil[gb.shift(static_cast<int>(j), q)] -
                        gij[gb.shift(static_cast<int>(l), q)]);
        }
      }
    }
  }
  ChristoffelJet out{TensorJet({Variance::Contravariant, Variance::Covariant, Variance::Covariant},
                               basis, g.center_ptr())};
  TensorJet& s = out.symbols;
  for (std::size_t k = 0; k < un; ++k) {
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = i; j < un; ++j) {
        double* d = s.raw((k * un + i) * un + j);
        for (std::size_t l = 0; l < un; ++l)
          jet_mul_acc(*basis, g_inv.raw(k * un + l), first.data() + ((l * un + i) * un + j) * size, d);
        if (j != i) std::copy_n(d, size, s.raw((k * un + j) * un + i));
      }
    }
  }
  return out;
}

ChristoffelJet christoffel_jet(const ModelSpec& m, std::span<const double> p, int order) {
  const TensorJet g = metric_jet(m, p, order + 1);
  return christoffel_jet(g, inverse_metric_jet(g));
}

Connection levi_civita(const ModelSpec& m, std::span<const double> p, int metric_order) {
  Connection c;
  c.metric = metric_jet(m, p, metric_order);
  c.inverse = inverse_metric_jet(c.metric);
  c.christoffel = christoffel_jet(c.metric, c.inverse);
  return c;
}

// ---------------------------------------------------------------------------
// Covariant calculus

TensorJet covariant_derivative(const TensorJet& t, const ChristoffelJet& gamma) {
  if (t.order() < 1) throw Error(ErrorCode::OrderExhausted, "covariant derivative of an order-0 jet");
  if (!t.fully_covariant())
    throw Error(ErrorCode::SlotError, "covariant_derivative expects a covariant tensor");
  const int r = t.order() - 1;
  if (t.rank() > 0 && gamma.order() < r)
    throw Error(ErrorCode::OrderExhausted, "Christoffel jet order too low");
  const int n = t.dim();
  const auto un = static_cast<std::size_t>(n);
  const int k = t.rank();
  auto basis = JetBasis::get(n, r);
  const std::size_t size = basis->size();
  TensorJet out = TensorJet::covariant(k + 1, basis, t.center_ptr());
  const std::size_t comps = t.component_count();
  const JetBasis& tb = t.basis();
  std::vector<std::size_t> strides(static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) strides[static_cast<std::size_t>(s)] = ipow(n, k - 1 - s);

  for (std::size_t a = 0; a < un; ++a) {
    for (std::size_t c = 0; c < comps; ++c) {
      double* d = out.raw(a * comps + c);
      const double* src = t.raw(c);
      for (std::size_t q = 0; q < size; ++q) d[q] = src[tb.shift(static_cast<int>(a), q)];
      for (int s = 0; s < k; ++s) {
        const std::size_t stride = strides[static_cast<std::size_t>(s)];
        const std::size_t is = (c / stride) % un;
        const std::size_t base = c - is * stride;
        for (std::size_t m = 0; m < un; ++m) {
          const double* gm = gamma.symbols.raw((m * un + a) * un + is);
          jet_mul_acc(*basis, gm, t.raw(base + m * stride), d, -1.0);
        }
      }
    }
  }
  return out;
}

namespace {

void check_slot(const TensorJet& t, int slot) {
  if (slot < 0 || slot >= t.rank()) throw Error(ErrorCode::SlotError, "slot out of range");
}

}  // namespace

TensorJet contract(const TensorJet& t, int slot_a, int slot_b, const TensorJet* metric) {
  check_slot(t, slot_a);
  check_slot(t, slot_b);
  if (slot_a == slot_b) throw Error(ErrorCode::SlotError, "cannot contract a slot with itself");
  if (slot_a > slot_b) std::swap(slot_a, slot_b);
  const Variance va = t.valence()[static_cast<std::size_t>(slot_a)];
  const Variance vb = t.valence()[static_cast<std::size_t>(slot_b)];
  const bool mixed = va != vb;
  if (!mixed) {
    const Variance need = va == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
    if (metric == nullptr || metric->rank() != 2 || metric->valence()[0] != need ||
        metric->valence()[1] != need)
      throw Error(ErrorCode::SlotError,
                  va == Variance::Covariant ? "contracting two covariant slots needs the inverse metric"
                                            : "contracting two contravariant slots needs the metric");
    if (metric->dim() != t.dim()) throw Error(ErrorCode::SlotError, "metric dimension mismatch");
  }
  const int n = t.dim();
  const auto un = static_cast<std::size_t>(n);
  const int k = t.rank();
  std::vector<Variance> valence;
  for (int s = 0; s < k; ++s)
    if (s != slot_a && s != slot_b) valence.push_back(t.valence()[static_cast<std::size_t>(s)]);
  auto basis = mixed ? t.basis_ptr() : common_basis(t, *metric);
  TensorJet out(valence, basis, t.center_ptr());
  const std::size_t size = basis->size();
  const std::size_t sa = ipow(n, k - 1 - slot_a);
  const std::size_t sb = ipow(n, k - 1 - slot_b);
  std::vector<int> in(static_cast<std::size_t>(k), 0);
  for (std::size_t o = 0; o < out.component_count(); ++o) {
    // Spread the output digits over the remaining input slots.
    std::size_t rem = o;
    for (int s = k - 1; s >= 0; --s) {
      if (s == slot_a || s == slot_b) {
        in[static_cast<std::size_t>(s)] = 0;
        continue;
      }
      in[static_cast<std::size_t>(s)] = static_cast<int>(rem % un);
      rem /= un;
    }
    std::size_t base = 0;
    for (int s = 0; s < k; ++s) base = base * un + static_cast<std::size_t>(in[static_cast<std::size_t>(s)]);
    double* d = out.raw(o);
    if (mixed) {
      for (std::size_t i = 0; i < un; ++i) {
        const double* src = t.raw(base + i * sa + i * sb);
        for (std::size_t q = 0; q < size; ++q) d[q] += src[q];
      }
    } else {
      for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j)
          jet_mul_acc(*basis, metric->raw(i * un + j), t.raw(base + i * sa + j * sb), d);
    }
  }
  return out;
}

namespace {

TensorJet move_index(const TensorJet& t, int slot, const TensorJet& m, Variance from) {
  check_slot(t, slot);
  if (t.valence()[static_cast<std::size_t>(slot)] != from)
    throw Error(ErrorCode::SlotError, from == Variance::Covariant ? "slot is already contravariant"
                                                                  : "slot is already covariant");
  const Variance to = from == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
  if (m.rank() != 2 || m.valence()[0] != to || m.valence()[1] != to)
    throw Error(ErrorCode::SlotError, "wrong metric variance for index move");
  const int n = t.dim();
  const auto un = static_cast<std::size_t>(n);
  std::vector<Variance> valence = t.valence();
  valence[static_cast<std::size_t>(slot)] = to;
  auto basis = common_basis(t, m);
  TensorJet out(valence, basis, t.center_ptr());
  const std::size_t stride = ipow(n, t.rank() - 1 - slot);
  for (std::size_t c = 0; c < out.component_count(); ++c) {
    const std::size_t a = (c / stride) % un;
    const std::size_t base = c - a * stride;
    double* d = out.raw(c);
    for (std::size_t b = 0; b < un; ++b) jet_mul_acc(*basis, m.raw(a * un + b), t.raw(base + b * stride), d);
  }
  return out;
}

}  // namespace

TensorJet raise_index(const TensorJet& t, int slot, const TensorJet& g_inv) {
  return move_index(t, slot, g_inv, Variance::Covariant);
}

TensorJet lower_index(const TensorJet& t, int slot, const TensorJet& g) {
  return move_index(t, slot, g, Variance::Contravariant);
}

TensorJet permute(const TensorJet& t, std::span<const int> perm) {
  const int k = t.rank();
  if (static_cast<int>(perm.size()) != k) throw Error(ErrorCode::SlotError, "permutation length mismatch");
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  for (int p : perm) {
    if (p < 0 || p >= k || used[static_cast<std::size_t>(p)])
      throw Error(ErrorCode::SlotError, "not a permutation");
    used[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Variance> valence(static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) valence[static_cast<std::size_t>(s)] = t.valence()[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
  TensorJet out(valence, t.basis_ptr(), t.center_ptr());
  const auto un = static_cast<std::size_t>(t.dim());
  std::vector<std::size_t> in_stride(static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) in_stride[static_cast<std::size_t>(s)] = ipow(t.dim(), k - 1 - s);
  for (std::size_t o = 0; o < out.component_count(); ++o) {
    std::size_t rem = o;
    std::size_t src = 0;
    for (int s = k - 1; s >= 0; --s) {
      src += (rem % un) * in_stride[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
      rem /= un;
    }
    std::copy_n(t.raw(src), t.coeff_count(), out.raw(o));
  }
  return out;
}

TensorJet permute(const TensorJet& t, std::initializer_list<int> perm) {
  return permute(t, std::span<const int>(perm.begin(), perm.size()));
}

TensorJet tensor_product(const TensorJet& a, const TensorJet& b) {
  auto basis = common_basis(a, b);
  std::vector<Variance> valence = a.valence();
  valence.insert(valence.end(), b.valence().begin(), b.valence().end());
  TensorJet out(valence, basis, a.center_ptr());
  const std::size_t nb = b.component_count();
  for (std::size_t i = 0; i < a.component_count(); ++i)
    for (std::size_t j = 0; j < nb; ++j) jet_mul_acc(*basis, a.raw(i), b.raw(j), out.raw(i * nb + j));
  return out;
}

TensorJet scale(const TensorJet& scalar, const TensorJet& t) {
  if (scalar.rank() != 0) throw Error(ErrorCode::SlotError, "scale expects a scalar field");
  auto basis = common_basis(scalar, t);
  TensorJet out(t.valence(), basis, t.center_ptr());
  for (std::size_t c = 0; c < t.component_count(); ++c) jet_mul_acc(*basis, scalar.raw(0), t.raw(c), out.raw(c));
  return out;
}

TensorJet squared_norm(const TensorJet& t, const TensorJet& g_inv) {
  if (!t.fully_covariant()) throw Error(ErrorCode::SlotError, "squared_norm expects a covariant tensor");
  TensorJet up = t;
  for (int s = 0; s < t.rank(); ++s) up = raise_index(up, s, g_inv);
  auto basis = common_basis(t, up);
  TensorJet out({}, basis, t.center_ptr());
  for (std::size_t c = 0; c < t.component_count(); ++c) jet_mul_acc(*basis, t.raw(c), up.raw(c), out.raw(0));
  return out;
}

TensorJet scalar_field(const Expr& e, std::span<const double> p, int order) {
  return TensorJet::scalar(jet_evaluate(e, p, order));
}

TensorJet gradient(const TensorJet& scalar) {
  if (scalar.rank() != 0) throw Error(ErrorCode::SlotError, "gradient expects a scalar field");
  return covariant_derivative(scalar, ChristoffelJet{});
}

TensorJet hessian(const TensorJet& scalar, const ChristoffelJet& gamma) {
  return covariant_derivative(gradient(scalar), gamma);
}

TensorJet hessian(const Expr& f, const ModelSpec& m, std::span<const double> p, int order) {
  const Connection conn = levi_civita(m, p, order + 1);
  return hessian(scalar_field(f, p, order + 2), conn.christoffel);
}

TensorJet weighted_laplacian(const TensorJet& t, const Connection& conn, const TensorJet& df) {
  if (t.order() < 2) throw Error(ErrorCode::OrderExhausted, "weighted Laplacian needs jet order >= 2");
  const TensorJet d1 = covariant_derivative(t, conn.christoffel);
  const TensorJet d2 = covariant_derivative(d1, conn.christoffel);
  TensorJet lap = contract(d2, 0, 1, &conn.inverse);
  const TensorJet grad_f = raise_index(df, 0, conn.inverse);
  const TensorJet drift = contract(tensor_product(grad_f, d1), 0, 1);
  lap -= drift;
  return lap;
}

TensorJet weighted_laplacian(const TensorJet& t, const ModelSpec& m) {
  if (!m.potential) throw Error(ErrorCode::MissingPotential, "model '" + m.name + "' has no potential");
  const Connection conn = levi_civita(m, t.center(), t.order());
  const TensorJet f = scalar_field(*m.potential, t.center(), t.order());
  return weighted_laplacian(t, conn, gradient(f));
}

}  // namespace solcheck
