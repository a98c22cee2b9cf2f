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

#ifndef BANDIT_HARNESS_HPP
#define BANDIT_HARNESS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/policies.hpp"

namespace bandit {

struct EnvironmentSpec {
  std::string kind;  // linear_fixed | linear_changing | k_armed
  int d = 0;
  int K = 0;
  std::optional<double> sigma;  // defaults: 0.5 synthetic, residual for datasets
  double gap = 0.2;             // k_armed mean separation

  // Feature-CSV pipeline (kind = linear_fixed): the ground-truth parameter is
  // a ridge fit over the whole table and actions are sampled rows.
  std::string features;
  std::string target_column;
  double fit_lambda = 1e-6;

  // Ratings pipeline (kind = linear_fixed): actions are item embeddings from
  // a low-rank factorization; each run picks one user vector as ground truth.
  std::string ratings;
  int rank = 5;
  int als_iters = 30;
  double als_lambda = 0.1;
};

struct AlgorithmSpec {
  PolicyConfig config;  // config.algorithm carries the tag
  std::string label;    // display/CSV name; defaults to the tag
  std::optional<double> noise_scale;  // R override; defaults to env sigma
};

struct ExperimentConfig {
  std::string name;
  EnvironmentSpec env;
  long horizon = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool full_trace = false;
  std::vector<AlgorithmSpec> algorithms;
};

// Parses and validates a TOML experiment file. Throws ConfigError on any
// invalid or unknown field, before any simulation happens.
ExperimentConfig load_experiment_config(const std::string& path);

// Environment factory with the one-off dataset work (CSV load, ridge fit,
// factorization) done upfront; make() draws the per-run environment.
class PreparedEnvironment {
 public:
  explicit PreparedEnvironment(const EnvironmentSpec& spec,
                               std::uint64_t base_seed);

  Environment make(std::uint64_t env_seed) const;
  double sigma() const { return sigma_; }
  const EnvironmentSpec& spec() const { return spec_; }

 private:
  EnvironmentSpec spec_;
  double sigma_ = 0.5;
  Eigen::MatrixXd action_pool_;   // dataset rows or item embeddings
  Eigen::MatrixXd user_pool_;     // ratings pipeline only
  Eigen::VectorXd theta_fixed_;   // feature pipeline only
};

// One simulated trajectory, logged at the checkpoint rounds.
struct RunResult {
  std::vector<double> regret_at;  // cumulative regret per checkpoint
  std::vector<double> q_at;       // cumulative uncertainty per checkpoint
  double potential_sum = 0.0;  // sum_t ||A_t||^2_{V_t^-1} (linear-state policies)
  bool coverage_all = true;    // theta* stayed inside the confidence set
};

struct SimulateOptions {
  // Check ||theta_hat - theta*||_V <= width every round (linear policies).
  bool track_coverage = false;
};

// Runs one (environment, policy) pair for `horizon` rounds. Asserts the
// runtime invariants: plausible-set non-emptiness, metric monotonicity, the
// elliptical-potential bound whenever the policy's lambda >= L^2, and the
// per-round confidence-width bounds for the k-armed constrained policy.
RunResult simulate_run(const Environment& env, Policy& policy, long horizon,
                       const std::vector<long>& checkpoints, Rng& ctx_rng,
                       Rng& noise_rng, Rng& policy_rng,
                       const SimulateOptions& opts = {});

// Rounds logged per run: 1, every n/100, and n.
std::vector<long> checkpoint_rounds(long horizon);

struct RawRow {
  int alg = 0;
  int run = 0;
  long round = 0;
  double regret_cum = 0.0;
  double q_cum = 0.0;
};

struct AggregateRow {
  int alg = 0;
  long round = 0;
  double regret_mean = 0.0;
  double regret_se = 0.0;
  double q_mean = 0.0;
  double q_se = 0.0;
};

struct ResultsTable {
  std::vector<std::string> algorithm_names;
  std::vector<RawRow> raw;              // ordered by (alg, run, round)
  std::vector<AggregateRow> aggregate;  // ordered by (alg, round)
};

// Mean and standard error per (algorithm, round) recomputed from raw rows.
std::vector<AggregateRow> aggregate_rows(const std::vector<RawRow>& raw,
                                         int num_algorithms);

// Simulates every (algorithm, run) pair. Within a run index all algorithms
// see the same environment draw, context stream and noise stream (paired
// comparisons); tasks are scheduled across threads (BENCH_THREADS caps the
// pool) with results identical to a serial execution.
ResultsTable run_experiment(const ExperimentConfig& cfg);

// Writes raw.csv, aggregate.csv, regret.svg and interpretability.svg.
void emit_outputs(const ResultsTable& table, const std::string& out_dir);

// Reads a raw.csv back into a table (aggregates recomputed).
ResultsTable load_raw_csv(const std::string& path);

}  // namespace bandit

#endif  // BANDIT_HARNESS_HPP
