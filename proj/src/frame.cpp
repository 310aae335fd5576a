// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/frame.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "solcheck/error.hpp"

namespace solcheck {

FrameTensor::FrameTensor(int dim, int rank) : n_(dim), rank_(rank) {
  std::size_t size = 1;
  for (int i = 0; i < rank; ++i) size *= static_cast<std::size_t>(dim);
  v_.assign(size, 0.0);
}

double FrameTensor::max_abs() const noexcept {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

double FrameTensor::norm_sq() const noexcept {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return s;
}

Frame orthonormal_frame(const TensorJet& g) {
  const int n = g.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g.value({i, j});
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "metric is not positive definite at the point");
  Frame f;
  f.dual = llt.matrixU();
  f.basis = llt.matrixU().solve(Eigen::MatrixXd::Identity(n, n));
  return f;
}

FrameTensor to_frame(const TensorJet& t, const Frame& frame) {
  const int n = t.dim();
  const int k = t.rank();
  FrameTensor cur(n, k);
  for (std::size_t c = 0; c < cur.size(); ++c) cur.at(c) = t.value_at(c);
  const auto un = static_cast<std::size_t>(n);
  FrameTensor next(n, k);
  std::size_t stride = cur.size();
  for (int s = 0; s < k; ++s) {
    stride /= un;
    const bool co = t.valence()[static_cast<std::size_t>(s)] == Variance::Covariant;
    for (std::size_t c = 0; c < cur.size(); ++c) {
      const std::size_t a = (c / stride) % un;
      const std::size_t base = c - a * stride;
      double acc = 0.0;
      for (std::size_t i = 0; i < un; ++i) {
        const double w = co ? frame.basis(static_cast<long>(i), static_cast<long>(a))
                            : frame.dual(static_cast<long>(a), static_cast<long>(i));
        acc += w * cur.at(base + i * stride);
      }
      next.at(c) = acc;
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace solcheck
