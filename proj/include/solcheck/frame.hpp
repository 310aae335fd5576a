// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <vector>

#include "solcheck/geometry.hpp"

namespace solcheck {

/// Order-0 components of a tensor in a g-orthonormal frame. Index placement no
/// longer matters there, so contractions are plain sums.
class FrameTensor {
 public:
  FrameTensor() = default;
  FrameTensor(int dim, int rank);

  int dim() const noexcept { return n_; }
  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return v_.size(); }

  double& operator()(std::initializer_list<int> idx) { return v_[flat(idx)]; }
  double operator()(std::initializer_list<int> idx) const { return v_[flat(idx)]; }
  double& at(std::size_t k) { return v_[k]; }
  double at(std::size_t k) const { return v_[k]; }
  std::vector<double>& data() noexcept { return v_; }
  const std::vector<double>& data() const noexcept { return v_; }

  double max_abs() const noexcept;
  /// Sum of squares, which is |T|^2 in an orthonormal frame.
  double norm_sq() const noexcept;

 private:
  std::size_t flat(std::initializer_list<int> idx) const noexcept {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return f;
  }
  int n_ = 0;
  int rank_ = 0;
  std::vector<double> v_;
};

/// Columns of `basis` are g-orthonormal vectors e_a (e = L^{-T} with g = L L^T).
struct Frame {
  Eigen::MatrixXd basis;
  Eigen::MatrixXd dual;  // L^T: frame components of a vector are dual * v

  int dim() const noexcept { return static_cast<int>(basis.rows()); }
};

/// Throws NotPositiveDefinite.
Frame orthonormal_frame(const TensorJet& g);

/// Order-0 part of t in the frame: covariant slots pair with e_a, contravariant
/// slots with the dual coframe.
FrameTensor to_frame(const TensorJet& t, const Frame& frame);

}  // namespace solcheck
