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

#ifndef BANDIT_METRICS_HPP
#define BANDIT_METRICS_HPP

#include <Eigen/Dense>
#include <vector>

#include "bandit/env.hpp"

namespace bandit {

// Gap between the best mean available this round and the chosen action's
// mean, against the environment's ground truth. Non-negative by definition.
double instant_regret(const RoundContext& ctx,
                      const Eigen::VectorXd& theta_star, int chosen);

// Worst squared mean-estimate error over the plausible actions:
// max_{a in plausible} (a^T (theta_hat - theta_star))^2.
double model_uncertainty(const Eigen::VectorXd& theta_hat,
                         const Eigen::VectorXd& theta_star,
                         const RoundContext& ctx,
                         const std::vector<int>& plausible);

// Online accumulator for cumulative regret R_n and the cumulative model
// uncertainty error Q_n; both series are non-decreasing, which add_round
// enforces.
class MetricsAccumulator {
 public:
  explicit MetricsAccumulator(bool keep_trace = false)
      : keep_trace_(keep_trace) {}

  void add_round(double instant_regret, double uncertainty);

  double regret_cum() const { return regret_cum_; }
  double q_cum() const { return q_cum_; }
  long rounds() const { return rounds_; }

  const std::vector<double>& regret_trace() const { return regret_trace_; }
  const std::vector<double>& q_trace() const { return q_trace_; }

 private:
  double regret_cum_ = 0.0;
  double q_cum_ = 0.0;
  long rounds_ = 0;
  bool keep_trace_;
  std::vector<double> regret_trace_;
  std::vector<double> q_trace_;
};

}  // namespace bandit

#endif  // BANDIT_METRICS_HPP
