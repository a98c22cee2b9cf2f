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

#ifndef BANDIT_POLICIES_HPP
#define BANDIT_POLICIES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bandit/design.hpp"
#include "bandit/env.hpp"
#include "bandit/linalg.hpp"

namespace bandit {

struct PolicyConfig {
  std::string algorithm;  // code | linucb | lints | egreedy | etc | elim
  double delta = 0.05;
  double lambda = 1.0;
  double L = 1.0;
  double S = 0.0;
  double R = 1.0;      // sub-Gaussian noise scale; harness defaults this to env sigma
  double epsilon = 0.05;   // egreedy / etc exploration fraction
  double ts_scale = 1.0;   // lints posterior scale
  long horizon = 0;
  std::uint64_t seed = 0;  // per-algorithm stream component
  bool delta_calibrated = false;  // k-armed: use delta / (2 K n^2) in widths
  bool etc_freeze = false;        // stop refreshing the estimate after commit
};

// Per-round confidence snapshot over the offered actions, built from the
// policy's own history with the same UCB/LCB construction the constrained
// selection uses. Baselines expose it too so the uncertainty metric is
// computed uniformly.
struct ConfidenceView {
  Eigen::VectorXd ucb;
  Eigen::VectorXd lcb;
  Eigen::VectorXd theta_hat;  // current working estimate (k-armed: means, 0 if unpulled)
};

struct Decision {
  int arm = 0;
  ConfidenceView view;
  // ||a||^2_{V_t^-1} of the chosen action w.r.t. the policy's design matrix,
  // when the policy maintains one. Feeds the elliptical-potential check.
  std::optional<double> chosen_m2;
};

// Indices whose UCB is at least the largest LCB. Never empty: the argmax-LCB
// action qualifies because its UCB dominates its own LCB.
std::vector<int> plausible_set(const Eigen::VectorXd& ucb,
                               const Eigen::VectorXd& lcb);

// Shared regularized-least-squares state for the linear policies.
struct LinearState {
  DesignMatrixd design;
  Eigen::VectorXd xty;
  ParameterEstimated estimate;
  EllipsoidWidthd width_cfg;

  LinearState(Eigen::Index d, const PolicyConfig& cfg)
      : design(d, cfg.lambda),
        xty(Eigen::VectorXd::Zero(d)),
        width_cfg{cfg.delta, cfg.L, cfg.S, cfg.R, cfg.lambda, d} {
    refresh();
  }

  void refresh() { estimate = ridge_fit(xty, design); }

  template <typename Derived>
  void absorb(const Eigen::MatrixBase<Derived>& a, double y) {
    design.rank_one_update(a);
    xty.noalias() += y * a;
  }

  double width() const { return width_cfg.width(design.count()); }
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Decision decide(const RoundContext& ctx, Rng& rng) = 0;
  virtual void observe(const RoundContext& ctx, int arm, double reward) = 0;
  virtual const std::string& name() const = 0;
};

// Constrained optimal-design selection for K-armed bandits: take the
// least-pulled action among those whose UCB clears the best LCB, with
// c_t(a) = sqrt(2 log(1/delta) / T_t(a)). Unpulled arms have infinite
// width, which makes the initial sweep take each action once.
class CodeKArmedPolicy : public Policy {
 public:
  CodeKArmedPolicy(int num_arms, const PolicyConfig& cfg);

  Decision decide(const RoundContext& ctx, Rng& rng) override;
  void observe(const RoundContext& ctx, int arm, double reward) override;
  const std::string& name() const override { return name_; }

  const std::vector<long>& pulls() const { return pulls_; }
  double mean_estimate(int arm) const {
    return pulls_[arm] > 0 ? reward_sum_(arm) / double(pulls_[arm]) : 0.0;
  }
  double confidence_width(int arm) const;

 private:
  std::string name_ = "code";
  double log_inv_delta_;
  std::vector<long> pulls_;
  Eigen::VectorXd reward_sum_;
};

// Base for policies driven by a shared ridge state. Handles the
// observe/refresh cycle and the confidence snapshot; subclasses pick arms.
class LinearPolicyBase : public Policy {
 public:
  LinearPolicyBase(std::string name, Eigen::Index d, const PolicyConfig& cfg)
      : name_(std::move(name)), cfg_(cfg), state_(d, cfg) {}

  void observe(const RoundContext& ctx, int arm, double reward) override;
  const std::string& name() const override { return name_; }
  const LinearState& state() const { return state_; }

 protected:
  // Fills mean_, m2_ and the view for the current context.
  void context_stats(const RoundContext& ctx, Decision& out);

  std::string name_;
  PolicyConfig cfg_;
  LinearState state_;
  Eigen::VectorXd mean_, m2_, half_width_;
  Eigen::MatrixXd scratch_;
};

// argmax over plausible actions of ||a||^2_{V^-1} (equivalently of the
// log-det gain); ties resolved to the lowest index.
class CodeLinearPolicy : public LinearPolicyBase {
 public:
  CodeLinearPolicy(Eigen::Index d, const PolicyConfig& cfg)
      : LinearPolicyBase("code", d, cfg) {}
  Decision decide(const RoundContext& ctx, Rng& rng) override;
};

// Optimism: argmax of <a, theta_hat> + width * ||a||_{V^-1}.
class LinUcbPolicy : public LinearPolicyBase {
 public:
  LinUcbPolicy(Eigen::Index d, const PolicyConfig& cfg)
      : LinearPolicyBase("linucb", d, cfg) {}
  Decision decide(const RoundContext& ctx, Rng& rng) override;
};

// Posterior sampling: theta ~ N(theta_hat, ts_scale^2 V^-1).
class LinTsPolicy : public LinearPolicyBase {
 public:
  LinTsPolicy(Eigen::Index d, const PolicyConfig& cfg)
      : LinearPolicyBase("lints", d, cfg) {}
  Decision decide(const RoundContext& ctx, Rng& rng) override;
};

// Explores with probability min(1, eps * sqrt(n/t) / 2), otherwise greedy.
class EpsGreedyPolicy : public LinearPolicyBase {
 public:
  EpsGreedyPolicy(Eigen::Index d, const PolicyConfig& cfg)
      : LinearPolicyBase("egreedy", d, cfg) {}
  Decision decide(const RoundContext& ctx, Rng& rng) override;
  long exploration_rounds() const { return exploration_rounds_; }

 private:
  long t_ = 0;
  long exploration_rounds_ = 0;
};

// Uniform exploration for the first ceil(eps * n) rounds, then greedy.
// The estimate keeps updating after the commit point unless etc_freeze.
class EtcPolicy : public LinearPolicyBase {
 public:
  EtcPolicy(Eigen::Index d, const PolicyConfig& cfg)
      : LinearPolicyBase("etc", d, cfg),
        commit_round_(static_cast<long>(
            std::ceil(cfg.epsilon * static_cast<double>(cfg.horizon)))) {}
  Decision decide(const RoundContext& ctx, Rng& rng) override;

 private:
  long t_ = 0;
  long commit_round_;
  std::optional<Eigen::VectorXd> frozen_theta_;
};

// Phased elimination with quadrupling phase lengths: a D-optimal design is
// computed over the surviving actions at each phase start, rounded to a pull
// schedule, and survivors are pruned against the within-phase least-squares
// estimate with radius 2^-ell. Requires a fixed action set.
class PhasedElimPolicy : public LinearPolicyBase {
 public:
  PhasedElimPolicy(Eigen::Index d, const PolicyConfig& cfg)
      : LinearPolicyBase("elim", d, cfg) {}

  Decision decide(const RoundContext& ctx, Rng& rng) override;
  void observe(const RoundContext& ctx, int arm, double reward) override;

  int phase() const { return phase_; }
  const std::vector<int>& survivors() const { return survivors_; }

 private:
  void start_phase();

  int phase_ = 0;
  std::vector<int> survivors_;
  std::vector<int> queue_;  // remaining scheduled pulls, front at queue_pos_
  std::size_t queue_pos_ = 0;
  long phase_len_ = 0;
  Eigen::MatrixXd pool_;
  Eigen::MatrixXd phase_xtx_;
  Eigen::VectorXd phase_xty_;
  bool committed_ = false;
};

// Instantiates the configured algorithm against an environment. Throws
// ConfigError for unknown tags and for elim on a changing action set.
std::unique_ptr<Policy> make_policy(const PolicyConfig& cfg,
                                    const Environment& env);

}  // namespace bandit

#endif  // BANDIT_POLICIES_HPP
