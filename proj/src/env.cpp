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

#include "bandit/env.hpp"

#include <cmath>
#include <stdexcept>

namespace bandit {

Environment Environment::k_armed(Eigen::VectorXd means, double sigma) {
  const int num_arms = static_cast<int>(means.size());
  if (num_arms < 2) throw std::invalid_argument("k_armed: need >= 2 arms");
  if (means.minCoeff() < 0.0 || means.maxCoeff() > 1.0)
    throw std::invalid_argument("k_armed: means must lie in [0, 1]");
  Environment env;
  env.kind_ = EnvKind::k_armed;
  env.theta_star_ = std::move(means);
  env.sigma_ = sigma;
  env.pool_ = Eigen::MatrixXd::Identity(num_arms, num_arms);
  env.num_actions_ = num_arms;
  env.L_ = 1.0;
  env.theta_star_.maxCoeff(&env.optimal_arm_);  // Eigen returns the first max
  return env;
}

Environment Environment::linear_fixed(Eigen::MatrixXd pool,
                                      Eigen::VectorXd theta, double sigma) {
  if (pool.rows() < 1 || pool.cols() != theta.size())
    throw std::invalid_argument("linear_fixed: pool/theta shape mismatch");
  Environment env;
  env.kind_ = EnvKind::linear_fixed;
  env.theta_star_ = std::move(theta);
  env.sigma_ = sigma;
  env.num_actions_ = static_cast<int>(pool.rows());
  env.L_ = std::sqrt(pool.rowwise().squaredNorm().maxCoeff());
  env.pool_ = std::move(pool);
  return env;
}

Environment Environment::linear_changing(Eigen::Index d, int num_actions,
                                         Eigen::VectorXd theta, double sigma) {
  if (theta.size() != d)
    throw std::invalid_argument("linear_changing: theta dimension mismatch");
  if (num_actions < 2)
    throw std::invalid_argument("linear_changing: need >= 2 actions");
  Environment env;
  env.kind_ = EnvKind::linear_changing;
  env.theta_star_ = std::move(theta);
  env.sigma_ = sigma;
  env.num_actions_ = num_actions;
  env.L_ = std::sqrt(static_cast<double>(d));  // sup norm over [-1,1]^d
  return env;
}

RoundContext Environment::next_round(long t, Rng& rng) const {
  if (t < 1) throw std::invalid_argument("next_round: t must be >= 1");
  RoundContext ctx;
  ctx.t = t;
  if (kind_ == EnvKind::linear_changing) {
    ctx.actions.resize(num_actions_, dim());
    for (Eigen::Index i = 0; i < ctx.actions.rows(); ++i)
      for (Eigen::Index j = 0; j < ctx.actions.cols(); ++j)
        ctx.actions(i, j) = rng.uniform(-1.0, 1.0);
  } else {
    ctx.actions = pool_;
  }
  return ctx;
}

Environment gen_synthetic_linear(Eigen::Index d, int num_actions, double sigma,
                                 Rng& rng) {
  if (d < 1 || num_actions < 2 || sigma < 0.0)
    throw std::invalid_argument("gen_synthetic_linear: bad arguments");
  Eigen::VectorXd theta(d);
  for (Eigen::Index i = 0; i < d; ++i) theta(i) = rng.normal();
  Eigen::MatrixXd pool(num_actions, d);
  for (Eigen::Index i = 0; i < pool.rows(); ++i)
    for (Eigen::Index j = 0; j < pool.cols(); ++j)
      pool(i, j) = rng.uniform(-1.0, 1.0);
  return Environment::linear_fixed(std::move(pool), std::move(theta), sigma);
}

Environment gen_synthetic_changing(Eigen::Index d, int num_actions,
                                   double sigma, Rng& rng) {
  if (d < 1 || num_actions < 2 || sigma < 0.0)
    throw std::invalid_argument("gen_synthetic_changing: bad arguments");
  Eigen::VectorXd theta(d);
  for (Eigen::Index i = 0; i < d; ++i) theta(i) = rng.normal();
  return Environment::linear_changing(d, num_actions, std::move(theta), sigma);
}

Environment gen_k_armed_gap(int num_arms, double gap, double sigma) {
  if (num_arms < 2 || gap <= 0.0 || gap > 1.0)
    throw std::invalid_argument("gen_k_armed_gap: bad arguments");
  Eigen::VectorXd means =
      Eigen::VectorXd::Constant(num_arms, 0.5 - gap / 2.0);
  means(0) = 0.5 + gap / 2.0;
  return Environment::k_armed(std::move(means), sigma);
}

}  // namespace bandit
