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

// Test-only reference computations: slow, direct implementations that stay
// independent of the incremental code paths they check.

#ifndef BANDIT_TESTS_ORACLES_HPP
#define BANDIT_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace oracles {

// Log-determinant through a dense LU, no Cholesky shortcut.
inline double dense_logdet(const Eigen::MatrixXd& m) {
  return std::log(std::abs(Eigen::FullPivLU<Eigen::MatrixXd>(m).determinant()));
}

// a^T V^-1 a via a dense solve.
inline double dense_mahalanobis_sq(const Eigen::MatrixXd& v,
                                   const Eigen::VectorXd& a) {
  return a.dot(v.fullPivLu().solve(a));
}

// Lowest-index argmax treating values within `tol` of the max as tied, so
// floating-point noise cannot flip a deliberate tie-break.
inline int argmax_with_ties(const Eigen::VectorXd& values, double tol = 1e-9) {
  const double top = values.maxCoeff();
  for (int i = 0; i < values.size(); ++i)
    if (values(i) >= top - tol) return i;
  return 0;
}

// Plausible set recomputed from scratch.
inline std::vector<int> brute_plausible(const Eigen::VectorXd& ucb,
                                        const Eigen::VectorXd& lcb) {
  double best_lcb = lcb(0);
  for (int i = 1; i < lcb.size(); ++i) best_lcb = std::max(best_lcb, lcb(i));
  std::vector<int> keep;
  for (int i = 0; i < ucb.size(); ++i)
    if (ucb(i) >= best_lcb) keep.push_back(i);
  return keep;
}

// Euclidean projection onto the probability simplex (sort-based).
inline Eigen::VectorXd project_simplex(Eigen::VectorXd v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  for (int i = 0; i < n; ++i) {
    cumsum += u[i];
    const double candidate = (cumsum - 1.0) / (i + 1);
    if (u[i] - candidate > 0.0) theta = candidate;
  }
  for (int i = 0; i < n; ++i) v(i) = std::max(0.0, v(i) - theta);
  return v;
}

// Projected-gradient ascent on log det(sum_i pi_i b_i b_i^T) over the
// simplex; an independent route to the D-optimal objective value.
inline double projected_gradient_logdet(const Eigen::MatrixXd& b, int iters,
                                        double step) {
  const int n = static_cast<int>(b.rows());
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  double best = -1e300;
  for (int it = 0; it < iters; ++it) {
    const Eigen::MatrixXd m = b.transpose() * pi.asDiagonal() * b;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) break;
    const double logdet =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    best = std::max(best, logdet);
    // gradient wrt pi_i is b_i^T M^-1 b_i
    const Eigen::MatrixXd sol = llt.solve(b.transpose());
    const Eigen::VectorXd grad =
        (b.transpose().cwiseProduct(sol)).colwise().sum().transpose();
    pi = project_simplex(pi + step * grad);
    // keep strictly feasible so M stays invertible
    pi = (pi.array() + 1e-12).matrix();
    pi /= pi.sum();
  }
  return best;
}

// Brute-force constrained selection for K-armed states: plausible set from
// scratch with c(a) = sqrt(2 log(1/delta) / T(a)), then the argmax of the
// dense log det(V + e_a e_a^T) with V = diag(T). All pulls must be >= 1.
inline int code_karmed_bruteforce(const std::vector<long>& pulls,
                                  const Eigen::VectorXd& mean_est,
                                  double delta) {
  const int k = static_cast<int>(pulls.size());
  Eigen::VectorXd ucb(k), lcb(k);
  for (int a = 0; a < k; ++a) {
    const double c = std::sqrt(2.0 * std::log(1.0 / delta) / double(pulls[a]));
    ucb(a) = mean_est(a) + c;
    lcb(a) = mean_est(a) - c;
  }
  const std::vector<int> plausible = brute_plausible(ucb, lcb);

  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a) v(a, a) = double(pulls[a]);
  Eigen::VectorXd score =
      Eigen::VectorXd::Constant(k, -std::numeric_limits<double>::infinity());
  for (int a : plausible) {
    Eigen::MatrixXd w = v;
    w(a, a) += 1.0;
    score(a) = dense_logdet(w);
  }
  return argmax_with_ties(score);
}

// Brute-force constrained selection for linear states, recomputed from the
// raw observation list: dense ridge estimate, dense widths, plausible set,
// then the argmax of dense log det(V + a a^T) over it.
struct LinearInstance {
  double lambda = 1.0;
  double delta = 0.05;
  double L = 1.0;
  double S = 0.0;
  double R = 1.0;
  std::vector<std::pair<Eigen::VectorXd, double>> observations;
  Eigen::MatrixXd actions;  // context, one row per action
};

inline int code_linear_bruteforce(const LinearInstance& in) {
  const Eigen::Index d = in.actions.cols();
  Eigen::MatrixXd v = in.lambda * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd xty = Eigen::VectorXd::Zero(d);
  for (const auto& [a, y] : in.observations) {
    v += a * a.transpose();
    xty += y * a;
  }
  const Eigen::VectorXd theta = v.fullPivLu().solve(xty);
  const double t = static_cast<double>(in.observations.size());
  const double width =
      in.R * std::sqrt(double(d) *
                       std::log((1.0 + t * in.L * in.L / in.lambda) / in.delta)) +
      std::sqrt(in.lambda) * in.S;

  const int k = static_cast<int>(in.actions.rows());
  Eigen::VectorXd ucb(k), lcb(k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd a = in.actions.row(i).transpose();
    const double m = a.dot(theta);
    const double half = width * std::sqrt(std::max(0.0, dense_mahalanobis_sq(v, a)));
    ucb(i) = m + half;
    lcb(i) = m - half;
  }
  const std::vector<int> plausible = brute_plausible(ucb, lcb);

  Eigen::VectorXd score =
      Eigen::VectorXd::Constant(k, -std::numeric_limits<double>::infinity());
  for (int i : plausible) {
    const Eigen::VectorXd a = in.actions.row(i).transpose();
    score(i) = dense_logdet(v + a * a.transpose());
  }
  return argmax_with_ties(score);
}

}  // namespace oracles

#endif  // BANDIT_TESTS_ORACLES_HPP
