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

#include "bandit/metrics.hpp"

#include <stdexcept>

namespace bandit {

double instant_regret(const RoundContext& ctx,
                      const Eigen::VectorXd& theta_star, int chosen) {
  if (chosen < 0 || chosen >= ctx.size())
    throw std::invalid_argument("instant_regret: chosen outside context");
  const Eigen::VectorXd means = ctx.actions * theta_star;
  return means.maxCoeff() - means(chosen);
}

double model_uncertainty(const Eigen::VectorXd& theta_hat,
                         const Eigen::VectorXd& theta_star,
                         const RoundContext& ctx,
                         const std::vector<int>& plausible) {
  if (plausible.empty())
    throw std::invalid_argument("model_uncertainty: empty plausible set");
  const Eigen::VectorXd diff = theta_hat - theta_star;
  double worst = 0.0;
  for (int i : plausible) {
    const double err = ctx.actions.row(i).dot(diff);
    worst = std::max(worst, err * err);
  }
  return worst;
}

void MetricsAccumulator::add_round(double instant_regret, double uncertainty) {
  if (instant_regret < 0.0 || uncertainty < 0.0)
    throw std::logic_error("MetricsAccumulator: negative per-round term");
  regret_cum_ += instant_regret;
  q_cum_ += uncertainty;
  ++rounds_;
  if (keep_trace_) {
    regret_trace_.push_back(regret_cum_);
    q_trace_.push_back(q_cum_);
  }
}

}  // namespace bandit
