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

#ifndef BANDIT_ENV_HPP
#define BANDIT_ENV_HPP

#include <Eigen/Dense>

#include "bandit/rng.hpp"

namespace bandit {

enum class EnvKind { k_armed, linear_fixed, linear_changing };

// Action set offered in one round; actions are the rows of `actions`.
// Fixed-pool kinds return the same matrix every round, the changing kind
// resamples it.
struct RoundContext {
  long t = 0;
  Eigen::MatrixXd actions;

  int size() const { return static_cast<int>(actions.rows()); }
  Eigen::Index dim() const { return actions.cols(); }
  auto action(int i) const { return actions.row(i).transpose(); }
};

// Ground-truth bandit environment. Immutable after construction; all
// randomness flows through caller-owned Rng streams, so runs replay
// exactly from their seeds. K-armed problems are represented with
// orthonormal basis actions and theta_star = mean vector, which lets
// linear policies run on them unchanged.
class Environment {
 public:
  static Environment k_armed(Eigen::VectorXd means, double sigma);
  static Environment linear_fixed(Eigen::MatrixXd pool, Eigen::VectorXd theta,
                                  double sigma);
  static Environment linear_changing(Eigen::Index d, int num_actions,
                                     Eigen::VectorXd theta, double sigma);

  EnvKind kind() const { return kind_; }
  Eigen::Index dim() const { return theta_star_.size(); }
  int actions_per_round() const { return num_actions_; }
  double sigma() const { return sigma_; }
  double action_norm_bound() const { return L_; }
  const Eigen::VectorXd& theta_star() const { return theta_star_; }
  const Eigen::MatrixXd& pool() const { return pool_; }
  // K-armed only: argmax of the means, ties resolved to the lowest index
  // at construction.
  int optimal_arm() const { return optimal_arm_; }

  RoundContext next_round(long t, Rng& rng) const;

  template <typename Derived>
  double mean_reward(const Eigen::MatrixBase<Derived>& a) const {
    return theta_star_.dot(a);
  }

  template <typename Derived>
  double sample_reward(const Eigen::MatrixBase<Derived>& a, Rng& rng) const {
    return mean_reward(a) + (sigma_ > 0.0 ? sigma_ * rng.normal() : 0.0);
  }

 private:
  Environment() = default;

  EnvKind kind_ = EnvKind::linear_fixed;
  Eigen::VectorXd theta_star_;
  double sigma_ = 0.0;
  Eigen::MatrixXd pool_;  // K x d for the fixed kinds; empty for changing
  int num_actions_ = 0;
  double L_ = 0.0;
  int optimal_arm_ = -1;
};

// theta* ~ N(0, I_d), K actions i.i.d. uniform on [-1, 1]^d.
Environment gen_synthetic_linear(Eigen::Index d, int num_actions, double sigma,
                                 Rng& rng);

// Same parameter draw, but the K actions are resampled every round.
Environment gen_synthetic_changing(Eigen::Index d, int num_actions,
                                   double sigma, Rng& rng);

// Means (0.5 + gap/2, 0.5 - gap/2, ..., 0.5 - gap/2); arm 0 optimal.
Environment gen_k_armed_gap(int num_arms, double gap, double sigma);

}  // namespace bandit

#endif  // BANDIT_ENV_HPP
