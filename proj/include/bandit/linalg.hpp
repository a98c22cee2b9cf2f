// Copyright 2026 The BanditBench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BANDIT_LINALG_HPP
#define BANDIT_LINALG_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "bandit/errors.hpp"

namespace bandit {

// Regularized design matrix V = lambda*I + sum_s a_s a_s^T with a cached
// inverse and log-determinant, maintained under rank-one updates
// (Sherman-Morrison for the inverse, log(1 + ||a||^2_{V^-1}) for the
// log-determinant). The cache is rebuilt from a dense factorization every
// kRefreshInterval updates, or earlier if V * V^-1 drifts away from I.
template <typename Scalar = double>
class DesignMatrix {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static constexpr int kRefreshInterval = 500;
  static constexpr int kDriftCheckInterval = 64;
  static constexpr Scalar kDriftTolerance = Scalar(1e-8);

  DesignMatrix(Eigen::Index dim, Scalar lambda)
      : lambda_(lambda),
        matrix_(Matrix::Identity(dim, dim) * lambda),
        inverse_(Matrix::Identity(dim, dim) / lambda),
        logdet_(Scalar(dim) * std::log(lambda)),
        count_(0) {
    if (dim < 1) throw std::invalid_argument("DesignMatrix: dim must be >= 1");
    if (!(lambda > Scalar(0)))
      throw std::invalid_argument("DesignMatrix: lambda must be > 0");
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  Scalar lambda() const { return lambda_; }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& inverse() const { return inverse_; }
  Scalar logdet() const { return logdet_; }
  long count() const { return count_; }

  // ||a||^2_{V^-1} = a^T V^-1 a. Zero iff a is zero.
  template <typename Derived>
  Scalar mahalanobis_sq(const Eigen::MatrixBase<Derived>& a) const {
    check_vector(a);
    const Scalar q = a.dot(inverse_ * a);
    return q > Scalar(0) ? q : Scalar(0);
  }

  // log det(V + a a^T) - log det V = log(1 + ||a||^2_{V^-1}).
  template <typename Derived>
  Scalar logdet_gain(const Eigen::MatrixBase<Derived>& a) const {
    return std::log1p(mahalanobis_sq(a));
  }

  // Absorbs one action: V += a a^T.
  template <typename Derived>
  void rank_one_update(const Eigen::MatrixBase<Derived>& a) {
    check_vector(a);
    if (!a.allFinite())
      throw std::invalid_argument("rank_one_update: non-finite entries");
    const Vector u = inverse_ * a;
    const Scalar q = a.dot(u);
    matrix_.noalias() += a * a.transpose();
    inverse_.noalias() -= (u * u.transpose()) / (Scalar(1) + q);
    logdet_ += std::log1p(q > Scalar(0) ? q : Scalar(0));
    ++count_;
    ++updates_since_refresh_;
    if (updates_since_refresh_ >= kRefreshInterval ||
        (updates_since_refresh_ % kDriftCheckInterval == 0 &&
         identity_drift() > kDriftTolerance)) {
      refresh();
    }
  }

  // Max-norm deviation of V * V^-1 from the identity.
  Scalar identity_drift() const {
    return (matrix_ * inverse_ - Matrix::Identity(dim(), dim()))
        .cwiseAbs()
        .maxCoeff();
  }

  // Rebuilds the inverse and log-determinant from a dense Cholesky of V.
  void refresh() {
    Eigen::LLT<Matrix> llt(matrix_);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("DesignMatrix: refresh factorization failed");
    inverse_ = llt.solve(Matrix::Identity(dim(), dim()));
    inverse_ = ((inverse_ + inverse_.transpose()) / Scalar(2)).eval();
    logdet_ = Scalar(2) * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    updates_since_refresh_ = 0;
  }

 private:
  template <typename Derived>
  void check_vector(const Eigen::MatrixBase<Derived>& a) const {
    if (a.size() != dim() || a.cols() != 1)
      throw std::invalid_argument("DesignMatrix: dimension mismatch");
  }

  Scalar lambda_;
  Matrix matrix_;
  Matrix inverse_;
  Scalar logdet_;
  long count_;
  int updates_since_refresh_ = 0;
};

// Functional flavor of the update, handy in tests and one-off call sites.
template <typename Scalar, typename Derived>
DesignMatrix<Scalar> rank_one_update(DesignMatrix<Scalar> design,
                                     const Eigen::MatrixBase<Derived>& a) {
  design.rank_one_update(a);
  return design;
}

// Ridge estimate theta_hat = V^-1 (sum_s a_s y_s), together with the
// sufficient statistic it came from and the update count of the design it
// was refreshed against.
template <typename Scalar = double>
struct ParameterEstimate {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> theta_hat;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> xty;
  long design_count = 0;
};

template <typename Scalar, typename Derived>
ParameterEstimate<Scalar> ridge_fit(const Eigen::MatrixBase<Derived>& xty,
                                    const DesignMatrix<Scalar>& design) {
  if (xty.size() != design.dim() || xty.cols() != 1)
    throw std::invalid_argument("ridge_fit: dimension mismatch");
  ParameterEstimate<Scalar> est;
  est.theta_hat = design.inverse() * xty;
  est.xty = xty;
  est.design_count = design.count();
  return est;
}

// Confidence-ellipsoid width after t absorbed observations:
//
//   width(t) = R * sqrt(d * log((1 + t L^2 / lambda) / delta)) + sqrt(lambda) * S
//
// the scalar bound on ||theta_hat_t - theta||_{V_t} defining the
// high-probability confidence set. R is the sub-Gaussian noise scale,
// L bounds action norms, S bounds the parameter norm.
template <typename Scalar = double>
struct EllipsoidWidth {
  Scalar delta;
  Scalar L;
  Scalar S;
  Scalar R;
  Scalar lambda;
  Eigen::Index d;

  Scalar width(long t) const {
    if (!(delta > Scalar(0) && delta < Scalar(1)))
      throw ConfigError("EllipsoidWidth: delta must be in (0, 1)");
    if (!(lambda > Scalar(0)))
      throw ConfigError("EllipsoidWidth: lambda must be > 0");
    if (t < 0) throw std::invalid_argument("EllipsoidWidth: t must be >= 0");
    const Scalar ratio =
        (Scalar(1) + Scalar(t) * L * L / lambda) / delta;
    return R * std::sqrt(Scalar(d) * std::log(ratio)) +
           std::sqrt(lambda) * S;
  }
};

using DesignMatrixd = DesignMatrix<double>;
using ParameterEstimated = ParameterEstimate<double>;
using EllipsoidWidthd = EllipsoidWidth<double>;

}  // namespace bandit

#endif  // BANDIT_LINALG_HPP
