// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solcheck/expr.hpp"
#include "solcheck/jet.hpp"

namespace solcheck {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A chart with metric, optional potential f and soliton constant lambda.
struct ModelSpec {
  std::string name;
  int dimension = 0;
  std::vector<std::string> coords;
  std::vector<std::vector<Expr>> metric;
  std::optional<Expr> potential;
  std::optional<double> lambda;
  std::vector<Interval> domain;
  /// Per-coordinate distance kept from the domain edges when sampling.
  std::vector<double> margins;
  std::optional<std::string> expected_class;

  bool has_potential() const noexcept { return potential.has_value(); }
};

/// Checks the structural invariants (sizes, symmetric metric expressions,
/// symbols in range, lambda present with f, non-empty domain).
/// Throws ValidationError.
void validate_structure(const ModelSpec& m);

/// True when p lies in the closed domain box.
bool in_domain(const ModelSpec& m, std::span<const double> p) noexcept;

enum class Variance : std::uint8_t { Covariant, Contravariant };

/// Dense multi-array of jets sharing one center and one order. Components are
/// stored row-major with the first slot most significant, so prepending a
/// derivative slot a maps component t to a * n^rank + t.
class TensorJet {
 public:
  TensorJet() = default;
  /// Zero tensor.
  TensorJet(std::vector<Variance> valence, std::shared_ptr<const JetBasis> basis,
            std::shared_ptr<const Point> center);

  static TensorJet covariant(int rank, std::shared_ptr<const JetBasis> basis,
                             std::shared_ptr<const Point> center);
  static TensorJet scalar(const Jet& j);

  int dim() const noexcept { return basis_ ? basis_->dim() : 0; }
  int rank() const noexcept { return static_cast<int>(valence_.size()); }
  int order() const noexcept { return basis_ ? basis_->order() : 0; }
  const std::vector<Variance>& valence() const noexcept { return valence_; }
  bool fully_covariant() const noexcept;
  const std::shared_ptr<const JetBasis>& basis_ptr() const noexcept { return basis_; }
  const JetBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const Point>& center_ptr() const noexcept { return center_; }
  const Point& center() const noexcept { return *center_; }

  std::size_t component_count() const noexcept { return components_; }
  std::size_t coeff_count() const noexcept { return stride_; }

  std::size_t flat_index(std::span<const int> idx) const;
  std::size_t flat_index(std::initializer_list<int> idx) const {
    return flat_index(std::span<const int>(idx.begin(), idx.size()));
  }
  /// Index tuple of a flat component position.
  std::vector<int> unflatten(std::size_t flat) const;

  std::span<double> coeffs(std::size_t flat) noexcept {
    return {data_.data() + flat * stride_, stride_};
  }
  std::span<const double> coeffs(std::size_t flat) const noexcept {
    return {data_.data() + flat * stride_, stride_};
  }
  double* raw(std::size_t flat) noexcept { return data_.data() + flat * stride_; }
  const double* raw(std::size_t flat) const noexcept { return data_.data() + flat * stride_; }

  /// Order-0 value of a component.
  double value(std::initializer_list<int> idx) const { return data_[flat_index(idx) * stride_]; }
  double value(std::span<const int> idx) const { return data_[flat_index(idx) * stride_]; }
  double value_at(std::size_t flat) const noexcept { return data_[flat * stride_]; }

  Jet component(std::span<const int> idx) const;
  Jet component(std::initializer_list<int> idx) const {
    return component(std::span<const int>(idx.begin(), idx.size()));
  }
  void set_component(std::span<const int> idx, const Jet& j);

  TensorJet truncated(int order) const;
  /// Same data with a different variance list (used by index gymnastics).
  TensorJet with_valence(std::vector<Variance> valence) const;

  /// Largest |value| over all components (order 0 only).
  double max_abs_value() const noexcept;

  TensorJet& operator+=(const TensorJet& o);
  TensorJet& operator-=(const TensorJet& o);
  TensorJet& operator*=(double s);

  friend TensorJet operator+(const TensorJet& a, const TensorJet& b);
  friend TensorJet operator-(const TensorJet& a, const TensorJet& b);
  friend TensorJet operator*(double s, TensorJet a) { return a *= s; }
  friend TensorJet operator*(TensorJet a, double s) { return a *= s; }

 private:
  std::vector<Variance> valence_;
  std::shared_ptr<const JetBasis> basis_;
  std::shared_ptr<const Point> center_;
  std::size_t components_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

/// Gamma^k_{ij} stored as a (1,2) tensor with slot order (k, i, j).
struct ChristoffelJet {
  TensorJet symbols;

  int order() const noexcept { return symbols.order(); }
  double value(int k, int i, int j) const { return symbols.value({k, i, j}); }
};

/// Metric, inverse metric and Levi-Civita symbols at one point. The metric
/// and inverse carry order r, the symbols r - 1.
struct Connection {
  TensorJet metric;
  TensorJet inverse;
  ChristoffelJet christoffel;

  int dim() const noexcept { return metric.dim(); }
};

/// Jets of the metric expressions. Throws DomainError, NotPositiveDefinite.
TensorJet metric_jet(const ModelSpec& m, std::span<const double> p, int order);

/// Jet of the matrix inverse, same order. Throws NotPositiveDefinite.
TensorJet inverse_metric_jet(const TensorJet& g);

/// Levi-Civita symbols from metric jets of order r (result order r - 1).
ChristoffelJet christoffel_jet(const TensorJet& g, const TensorJet& g_inv);
/// Levi-Civita symbols of order r (metric evaluated to order r + 1).
ChristoffelJet christoffel_jet(const ModelSpec& m, std::span<const double> p, int order);

Connection levi_civita(const ModelSpec& m, std::span<const double> p, int metric_order);

/// (nabla T)_{a i1..ik} = d_a T_{i1..ik} - sum_s Gamma^m_{a i_s} T_{..m..}.
/// The derivative slot is prepended. Output order is T.order() - 1.
/// Throws OrderExhausted (order 0) and SlotError (contravariant slots).
TensorJet covariant_derivative(const TensorJet& t, const ChristoffelJet& gamma);

/// Contracts two distinct slots. A covariant pair needs the inverse metric, a
/// contravariant pair needs the metric, a mixed pair needs nothing.
/// Throws SlotError.
TensorJet contract(const TensorJet& t, int slot_a, int slot_b,
                   const TensorJet* metric = nullptr);

TensorJet raise_index(const TensorJet& t, int slot, const TensorJet& g_inv);
TensorJet lower_index(const TensorJet& t, int slot, const TensorJet& g);

/// Reorders slots: result slot s is input slot perm[s].
TensorJet permute(const TensorJet& t, std::span<const int> perm);
TensorJet permute(const TensorJet& t, std::initializer_list<int> perm);

/// Outer product A (x) B, slots of A first.
TensorJet tensor_product(const TensorJet& a, const TensorJet& b);

/// Scalar field times tensor.
TensorJet scale(const TensorJet& scalar, const TensorJet& t);

/// Full g-contraction of a covariant tensor with itself, |T|^2, as a scalar jet.
TensorJet squared_norm(const TensorJet& t, const TensorJet& g_inv);

/// Jet of a scalar expression as a rank-0 tensor.
TensorJet scalar_field(const Expr& e, std::span<const double> p, int order);

/// Covector d f; order drops by one.
TensorJet gradient(const TensorJet& scalar);

/// Covariant Hessian of f to the given order.
TensorJet hessian(const Expr& f, const ModelSpec& m, std::span<const double> p, int order);
TensorJet hessian(const TensorJet& scalar, const ChristoffelJet& gamma);

/// Delta T - nabla_{grad f} T for covariant T of order >= 2, where Delta
/// contracts the two prepended derivative slots. `df` is the covector d f.
/// Output order is T.order() - 2. Throws OrderExhausted.
TensorJet weighted_laplacian(const TensorJet& t, const Connection& conn, const TensorJet& df);
/// Same, building the connection and potential from the model at T's center.
/// Throws MissingPotential.
TensorJet weighted_laplacian(const TensorJet& t, const ModelSpec& m);

}  // namespace solcheck
