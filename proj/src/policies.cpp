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

#include "bandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bandit/errors.hpp"

namespace bandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lowest-index argmax over a subset of indices (all if subset empty).
int argmax_over(const Eigen::VectorXd& values, const std::vector<int>& subset) {
  int best = subset[0];
  for (int i : subset)
    if (values(i) > values(best)) best = i;
  return best;
}

int argmax_all(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i)
    if (values(i) > values(best)) best = i;
  return best;
}

}  // namespace

std::vector<int> plausible_set(const Eigen::VectorXd& ucb,
                               const Eigen::VectorXd& lcb) {
  const double best_lcb = lcb.maxCoeff();
  std::vector<int> keep;
  keep.reserve(ucb.size());
  for (int i = 0; i < ucb.size(); ++i)
    if (ucb(i) >= best_lcb) keep.push_back(i);
  if (keep.empty())
    throw std::logic_error("plausible_set: empty set (UCB < max LCB everywhere)");
  return keep;
}

// ---------------------------------------------------------------------------
// K-armed CODE

CodeKArmedPolicy::CodeKArmedPolicy(int num_arms, const PolicyConfig& cfg)
    : pulls_(num_arms, 0), reward_sum_(Eigen::VectorXd::Zero(num_arms)) {
  double delta = cfg.delta;
  if (cfg.delta_calibrated) {
    const double n = static_cast<double>(std::max<long>(cfg.horizon, 1));
    delta = cfg.delta / (2.0 * num_arms * n * n);
  }
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("code (k-armed): delta must be in (0, 1)");
  log_inv_delta_ = std::log(1.0 / delta);
}

double CodeKArmedPolicy::confidence_width(int arm) const {
  if (pulls_[arm] == 0) return kInf;
  return std::sqrt(2.0 * log_inv_delta_ / static_cast<double>(pulls_[arm]));
}

Decision CodeKArmedPolicy::decide(const RoundContext& ctx, Rng&) {
  const int k = static_cast<int>(pulls_.size());
  if (ctx.size() != k)
    throw std::invalid_argument("code (k-armed): context size changed");

  Decision d;
  d.view.ucb.resize(k);
  d.view.lcb.resize(k);
  d.view.theta_hat.resize(k);
  for (int a = 0; a < k; ++a) {
    const double mean = mean_estimate(a);
    const double width = confidence_width(a);
    d.view.theta_hat(a) = mean;
    d.view.ucb(a) = mean + width;
    d.view.lcb(a) = mean - width;
  }

  const std::vector<int> plausible = plausible_set(d.view.ucb, d.view.lcb);
  int pick = plausible[0];
  for (int a : plausible)
    if (pulls_[a] < pulls_[pick]) pick = a;
  d.arm = pick;
  return d;
}

void CodeKArmedPolicy::observe(const RoundContext&, int arm, double reward) {
  ++pulls_[arm];
  reward_sum_(arm) += reward;
}

// ---------------------------------------------------------------------------
// Linear policies

void LinearPolicyBase::observe(const RoundContext& ctx, int arm,
                               double reward) {
  state_.absorb(ctx.action(arm), reward);
}

void LinearPolicyBase::context_stats(const RoundContext& ctx, Decision& out) {
  state_.refresh();
  const Eigen::MatrixXd& actions = ctx.actions;
  scratch_.noalias() = actions * state_.design.inverse();
  m2_ = scratch_.cwiseProduct(actions).rowwise().sum().cwiseMax(0.0);
  mean_.noalias() = actions * state_.estimate.theta_hat;
  const double w = state_.width();
  half_width_ = w * m2_.cwiseSqrt();
  out.view.ucb = mean_ + half_width_;
  out.view.lcb = mean_ - half_width_;
  out.view.theta_hat = state_.estimate.theta_hat;
}

Decision CodeLinearPolicy::decide(const RoundContext& ctx, Rng&) {
  Decision d;
  context_stats(ctx, d);
  const std::vector<int> plausible = plausible_set(d.view.ucb, d.view.lcb);
  d.arm = argmax_over(m2_, plausible);
  d.chosen_m2 = m2_(d.arm);
  return d;
}

Decision LinUcbPolicy::decide(const RoundContext& ctx, Rng&) {
  Decision d;
  context_stats(ctx, d);
  d.arm = argmax_all(d.view.ucb);
  d.chosen_m2 = m2_(d.arm);
  return d;
}

Decision LinTsPolicy::decide(const RoundContext& ctx, Rng& rng) {
  Decision d;
  context_stats(ctx, d);
  const Eigen::Index dim = state_.design.dim();
  Eigen::LLT<Eigen::MatrixXd> llt(state_.design.inverse());
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("lints: covariance factorization failed");
  Eigen::VectorXd z(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z(i) = rng.normal();
  const Eigen::VectorXd spread = llt.matrixL() * z;
  const Eigen::VectorXd theta_tilde =
      state_.estimate.theta_hat + cfg_.ts_scale * spread;
  d.arm = argmax_all(ctx.actions * theta_tilde);
  d.chosen_m2 = m2_(d.arm);
  return d;
}

Decision EpsGreedyPolicy::decide(const RoundContext& ctx, Rng& rng) {
  ++t_;
  Decision d;
  context_stats(ctx, d);
  const double horizon = static_cast<double>(std::max<long>(cfg_.horizon, 1));
  const double p = std::min(
      1.0, cfg_.epsilon * std::sqrt(horizon / static_cast<double>(t_)) / 2.0);
  if (rng.uniform() < p) {
    ++exploration_rounds_;
    d.arm = rng.uniform_int(ctx.size());
  } else {
    d.arm = argmax_all(mean_);
  }
  d.chosen_m2 = m2_(d.arm);
  return d;
}

Decision EtcPolicy::decide(const RoundContext& ctx, Rng& rng) {
  ++t_;
  Decision d;
  context_stats(ctx, d);
  if (t_ <= commit_round_) {
    d.arm = rng.uniform_int(ctx.size());
  } else if (cfg_.etc_freeze) {
    if (!frozen_theta_) frozen_theta_ = state_.estimate.theta_hat;
    d.arm = argmax_all(ctx.actions * *frozen_theta_);
  } else {
    d.arm = argmax_all(mean_);
  }
  d.chosen_m2 = m2_(d.arm);
  return d;
}

// ---------------------------------------------------------------------------
// Phased elimination

void PhasedElimPolicy::start_phase() {
  ++phase_;
  const Eigen::Index d = pool_.cols();
  if (phase_ == 1) {
    const double init = std::max(
        static_cast<double>(d * (d + 1)) / 2.0,
        std::ceil(4.0 * static_cast<double>(d) * std::log(1.0 / cfg_.delta)));
    phase_len_ = static_cast<long>(init);
  } else {
    phase_len_ *= 4;
  }

  Eigen::MatrixXd sub(survivors_.size(), d);
  for (std::size_t i = 0; i < survivors_.size(); ++i)
    sub.row(i) = pool_.row(survivors_[i]);
  const Design design = d_optimal_design(sub, 0.01);
  const long budget =
      std::max<long>(phase_len_, static_cast<long>(design.support.size()));
  const std::vector<long> counts = round_allocation(design, budget);

  queue_.clear();
  queue_pos_ = 0;
  for (std::size_t i = 0; i < design.support.size(); ++i)
    queue_.insert(queue_.end(), counts[i],
                  survivors_[design.support[i].first]);

  phase_xtx_ = Eigen::MatrixXd::Zero(d, d);
  phase_xty_ = Eigen::VectorXd::Zero(d);
}

Decision PhasedElimPolicy::decide(const RoundContext& ctx, Rng&) {
  if (phase_ == 0) {
    pool_ = ctx.actions;
    survivors_.resize(ctx.size());
    for (int i = 0; i < ctx.size(); ++i) survivors_[i] = i;
    start_phase();
  }

  Decision d;
  context_stats(ctx, d);

  if (!committed_ && queue_pos_ >= queue_.size()) {
    // Phase over: refit from this phase's pulls only and eliminate.
    const Eigen::Index dim = pool_.cols();
    const Eigen::VectorXd theta_phase =
        (phase_xtx_ + 1e-10 * Eigen::MatrixXd::Identity(dim, dim))
            .ldlt()
            .solve(phase_xty_);
    const double eps_ell = std::pow(2.0, -phase_);
    double best_value = -kInf;
    for (int s : survivors_)
      best_value = std::max(best_value, pool_.row(s).dot(theta_phase));
    std::vector<int> next;
    for (int s : survivors_)
      if (best_value - pool_.row(s).dot(theta_phase) <= 2.0 * eps_ell)
        next.push_back(s);
    survivors_ = std::move(next);
    if (survivors_.size() == 1) {
      committed_ = true;
    } else {
      start_phase();
    }
  }

  if (committed_) {
    d.arm = survivors_[0];
  } else {
    d.arm = queue_[queue_pos_++];
  }
  d.chosen_m2 = m2_(d.arm);
  return d;
}

void PhasedElimPolicy::observe(const RoundContext& ctx, int arm,
                               double reward) {
  LinearPolicyBase::observe(ctx, arm, reward);
  if (!committed_) {
    const auto a = ctx.action(arm);
    phase_xtx_.noalias() += a * a.transpose();
    phase_xty_.noalias() += reward * a;
  }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(const PolicyConfig& cfg,
                                    const Environment& env) {
  const Eigen::Index d =
      env.kind() == EnvKind::k_armed ? env.actions_per_round() : env.dim();
  const std::string& tag = cfg.algorithm;
  if (tag == "code") {
    if (env.kind() == EnvKind::k_armed)
      return std::make_unique<CodeKArmedPolicy>(env.actions_per_round(), cfg);
    return std::make_unique<CodeLinearPolicy>(d, cfg);
  }
  if (tag == "linucb") return std::make_unique<LinUcbPolicy>(d, cfg);
  if (tag == "lints") return std::make_unique<LinTsPolicy>(d, cfg);
  if (tag == "egreedy") return std::make_unique<EpsGreedyPolicy>(d, cfg);
  if (tag == "etc") return std::make_unique<EtcPolicy>(d, cfg);
  if (tag == "elim") {
    if (env.kind() == EnvKind::linear_changing)
      throw ConfigError("elim requires a fixed action set");
    return std::make_unique<PhasedElimPolicy>(d, cfg);
  }
  throw ConfigError("unknown algorithm: " + tag);
}

}  // namespace bandit
