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

#include "bandit/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bandit {
namespace {

constexpr double kWeightFloor = 1e-9;

// Orthonormal basis of the row span of `actions` (d x r), via column-pivoted
// QR of the transpose. r = 0 for an all-zero set.
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& actions) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(actions.transpose());
  qr.setThreshold(1e-10);
  const Eigen::Index r = qr.rank();
  if (r == 0) return Eigen::MatrixXd(actions.cols(), 0);
  Eigen::MatrixXd q = qr.householderQ();
  return q.leftCols(r);
}

// Greedy volumetric initialization: repeatedly add the action with the
// largest component orthogonal to the span of those already picked.
std::vector<int> greedy_spanning_subset(const Eigen::MatrixXd& b, int rank) {
  const int n = static_cast<int>(b.rows());
  std::vector<int> picked;
  Eigen::MatrixXd residual = b;  // rows orthogonalized against picks
  for (int step = 0; step < rank; ++step) {
    int best = -1;
    double best_norm2 = 1e-20;
    for (int i = 0; i < n; ++i) {
      const double n2 = residual.row(i).squaredNorm();
      if (n2 > best_norm2) {
        best_norm2 = n2;
        best = i;
      }
    }
    if (best < 0) break;
    picked.push_back(best);
    const Eigen::RowVectorXd dir = residual.row(best) / std::sqrt(best_norm2);
    residual -= (residual * dir.transpose()) * dir;
  }
  return picked;
}

}  // namespace

Design d_optimal_design(const Eigen::MatrixXd& actions, double tol,
                        int max_iters) {
  const int n = static_cast<int>(actions.rows());
  if (n < 1) throw std::invalid_argument("d_optimal_design: empty action set");
  if (!(tol > 0.0)) throw std::invalid_argument("d_optimal_design: tol must be > 0");

  const Eigen::MatrixXd basis = span_basis(actions);
  const int r = static_cast<int>(basis.cols());
  if (r == 0)
    throw std::invalid_argument("d_optimal_design: all actions are zero");

  // Work inside the span: rows of b are the projected actions.
  const Eigen::MatrixXd b = actions * basis;

  Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
  const std::vector<int> seed = greedy_spanning_subset(b, r);
  for (int idx : seed) weights(idx) = 1.0 / static_cast<double>(seed.size());

  const auto info_matrix = [&](const Eigen::VectorXd& w) {
    return Eigen::MatrixXd(b.transpose() * w.asDiagonal() * b);
  };

  Eigen::VectorXd g_all(n);
  double prev_logdet = -std::numeric_limits<double>::infinity();
  double g_max = 0.0;
  bool certified = false;

  for (int iter = 0; iter <= max_iters; ++iter) {
    const Eigen::MatrixXd m = info_matrix(weights);
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("d_optimal_design: information matrix not PD");
    const double logdet =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    if (logdet < prev_logdet - 1e-9)
      throw std::logic_error("d_optimal_design: objective decreased");
    prev_logdet = logdet;

    // g_i = b_i^T M^-1 b_i for every action.
    const Eigen::MatrixXd sol = llt.solve(b.transpose());
    g_all = (b.transpose().cwiseProduct(sol)).colwise().sum().transpose();

    int j;
    g_max = g_all.maxCoeff(&j);
    if (g_max <= (1.0 + tol) * static_cast<double>(r)) {
      certified = true;
      break;
    }
    if (iter == max_iters) break;

    // Exact line-search step toward the vertex e_j.
    const double gamma =
        (g_max - static_cast<double>(r)) / (static_cast<double>(r) * (g_max - 1.0));
    weights *= (1.0 - gamma);
    weights(j) += gamma;
  }

  if (!certified)
    std::fprintf(stderr,
                 "d_optimal_design: iteration cap %d hit, g = %.6f vs target "
                 "%.6f; returning best iterate\n",
                 max_iters, g_max, (1.0 + tol) * r);

  Design design;
  design.effective_dim = r;
  design.g_value = g_max;
  double kept = 0.0;
  for (int i = 0; i < n; ++i) {
    if (weights(i) >= kWeightFloor) {
      design.support.emplace_back(i, weights(i));
      kept += weights(i);
    }
  }
  for (auto& [idx, w] : design.support) w /= kept;
  return design;
}

std::vector<long> round_allocation(const Design& design, long m) {
  const long k = static_cast<long>(design.support.size());
  if (k == 0) throw std::invalid_argument("round_allocation: empty support");
  if (m < k)
    throw std::invalid_argument("round_allocation: budget below support size");

  std::vector<long> counts(k);
  long total = 0;
  for (long i = 0; i < k; ++i) {
    counts[i] = static_cast<long>(
        std::ceil(design.support[i].second * static_cast<double>(m)));
    counts[i] = std::max<long>(counts[i], 1);
    total += counts[i];
  }
  while (total > m) {
    long largest = 0;
    for (long i = 1; i < k; ++i)
      if (counts[i] > counts[largest]) largest = i;
    if (counts[largest] <= 1) break;  // cannot happen with m >= k
    --counts[largest];
    --total;
  }
  return counts;
}

}  // namespace bandit
