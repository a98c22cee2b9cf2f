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

#include "bandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bandit/data.hpp"
#include "bandit/errors.hpp"
#include "bandit/metrics.hpp"
#include "bandit/svg.hpp"
#include "bandit/toml.hpp"

namespace fs = std::filesystem;

namespace bandit {
namespace {

// ---- typed accessors over the parsed config --------------------------------

double get_double(const toml::Table& t, const std::string& key, double dflt,
                  const std::string& ctx) {
  auto v = t.get(key);
  if (!v) return dflt;
  if (!v->is_number())
    throw ConfigError(ctx + "." + key + " must be a number");
  return v->as_double();
}

long get_int(const toml::Table& t, const std::string& key, long dflt,
             const std::string& ctx) {
  auto v = t.get(key);
  if (!v) return dflt;
  if (!v->is_number())
    throw ConfigError(ctx + "." + key + " must be an integer");
  return static_cast<long>(v->as_int());
}

std::string get_string(const toml::Table& t, const std::string& key,
                       const std::string& dflt, const std::string& ctx) {
  auto v = t.get(key);
  if (!v) return dflt;
  if (!v->is_string()) throw ConfigError(ctx + "." + key + " must be a string");
  return v->as_string();
}

bool get_bool(const toml::Table& t, const std::string& key, bool dflt,
              const std::string& ctx) {
  auto v = t.get(key);
  if (!v) return dflt;
  if (!v->is_bool())
    throw ConfigError(ctx + "." + key + " must be true or false");
  return v->as_bool();
}

void reject_unknown_keys(const toml::Table& t,
                         const std::set<std::string>& known,
                         const std::string& ctx) {
  for (const auto& [key, value] : t.values)
    if (!known.count(key))
      throw ConfigError("unknown key '" + key + "' in " + ctx);
}

AlgorithmSpec parse_algorithm(const toml::Table& t, std::size_t index) {
  const std::string ctx = "algorithm[" + std::to_string(index) + "]";
  reject_unknown_keys(t,
                      {"name", "label", "delta", "lambda", "L", "S", "R",
                       "epsilon", "ts_scale", "seed", "delta_calibrated",
                       "etc_freeze"},
                      ctx);
  AlgorithmSpec spec;
  spec.config.algorithm = get_string(t, "name", "", ctx);
  if (spec.config.algorithm.empty())
    throw ConfigError(ctx + ": missing algorithm name");
  spec.label = get_string(t, "label", spec.config.algorithm, ctx);
  spec.config.delta = get_double(t, "delta", 0.05, ctx);
  spec.config.lambda = get_double(t, "lambda", 1.0, ctx);
  spec.config.L = get_double(t, "L", 1.0, ctx);
  spec.config.S = get_double(t, "S", 0.0, ctx);
  spec.config.epsilon = get_double(t, "epsilon", 0.05, ctx);
  spec.config.ts_scale = get_double(t, "ts_scale", 1.0, ctx);
  spec.config.seed = static_cast<std::uint64_t>(get_int(t, "seed", 0, ctx));
  spec.config.delta_calibrated = get_bool(t, "delta_calibrated", false, ctx);
  spec.config.etc_freeze = get_bool(t, "etc_freeze", false, ctx);
  if (t.has("R")) spec.noise_scale = get_double(t, "R", 0.0, ctx);
  return spec;
}

EnvironmentSpec parse_environment(const toml::Table& t) {
  const std::string ctx = "environment";
  reject_unknown_keys(t,
                      {"kind", "d", "K", "sigma", "gap", "features",
                       "target_column", "fit_lambda", "ratings", "rank",
                       "als_iters", "als_lambda"},
                      ctx);
  EnvironmentSpec env;
  env.kind = get_string(t, "kind", "", ctx);
  env.d = static_cast<int>(get_int(t, "d", 0, ctx));
  env.K = static_cast<int>(get_int(t, "K", 0, ctx));
  if (t.has("sigma")) env.sigma = get_double(t, "sigma", 0.0, ctx);
  env.gap = get_double(t, "gap", 0.2, ctx);
  env.features = get_string(t, "features", "", ctx);
  env.target_column = get_string(t, "target_column", "", ctx);
  env.fit_lambda = get_double(t, "fit_lambda", 1e-6, ctx);
  env.ratings = get_string(t, "ratings", "", ctx);
  env.rank = static_cast<int>(get_int(t, "rank", 5, ctx));
  env.als_iters = static_cast<int>(get_int(t, "als_iters", 30, ctx));
  env.als_lambda = get_double(t, "als_lambda", 0.1, ctx);
  return env;
}

const std::set<std::string> kAlgorithmTags = {"code",    "linucb", "lints",
                                              "egreedy", "etc",    "elim"};

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (cfg.runs < 1) throw ConfigError("runs must be >= 1");
  if (cfg.algorithms.empty()) throw ConfigError("need at least one algorithm");

  const EnvironmentSpec& env = cfg.env;
  const bool dataset = !env.features.empty() || !env.ratings.empty();
  if (env.kind != "linear_fixed" && env.kind != "linear_changing" &&
      env.kind != "k_armed")
    throw ConfigError("environment.kind must be linear_fixed, "
                      "linear_changing or k_armed");
  if (!env.features.empty() && !env.ratings.empty())
    throw ConfigError("environment: features and ratings are exclusive");
  if (dataset && env.kind != "linear_fixed")
    throw ConfigError("dataset environments must use kind = linear_fixed");
  if (!env.features.empty() && env.target_column.empty())
    throw ConfigError("environment.features requires target_column");
  if (env.kind == "k_armed") {
    if (env.K < 2) throw ConfigError("k_armed needs K >= 2");
    if (!(env.gap > 0.0 && env.gap <= 1.0))
      throw ConfigError("k_armed gap must be in (0, 1]");
  } else if (!dataset) {
    if (env.d < 1) throw ConfigError("environment.d must be >= 1");
    if (env.K < 2) throw ConfigError("environment.K must be >= 2");
  }
  if (env.sigma && *env.sigma < 0.0) throw ConfigError("sigma must be >= 0");

  std::set<std::string> labels;
  for (const auto& alg : cfg.algorithms) {
    const PolicyConfig& pc = alg.config;
    if (!kAlgorithmTags.count(pc.algorithm))
      throw ConfigError("unknown algorithm: " + pc.algorithm);
    if (!(pc.delta > 0.0 && pc.delta < 1.0))
      throw ConfigError(alg.label + ": delta must be in (0, 1)");
    if (!(pc.lambda > 0.0))
      throw ConfigError(alg.label + ": lambda must be > 0");
    if (pc.epsilon < 0.0 || pc.epsilon > 1.0)
      throw ConfigError(alg.label + ": epsilon must be in [0, 1]");
    if (pc.ts_scale < 0.0)
      throw ConfigError(alg.label + ": ts_scale must be >= 0");
    if (pc.algorithm == "elim" && env.kind == "linear_changing")
      throw ConfigError("elim requires a fixed action set");
    if (!labels.insert(alg.label).second)
      throw ConfigError("duplicate algorithm label: " + alg.label);
  }
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int thread_budget() {
  if (const char* env = std::getenv("BENCH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  const toml::Document doc = toml::parse_file(path);
  reject_unknown_keys(doc.root,
                      {"name", "horizon", "runs", "seed", "out", "full_trace"},
                      "top level");
  for (const auto& [name, table] : doc.tables)
    if (name != "environment")
      throw ConfigError("unknown table [" + name + "]");
  for (const auto& [name, tables] : doc.table_arrays)
    if (name != "algorithm")
      throw ConfigError("unknown table array [[" + name + "]]");

  ExperimentConfig cfg;
  cfg.name = get_string(doc.root, "name",
                        fs::path(path).stem().string(), "top level");
  cfg.horizon = get_int(doc.root, "horizon", 0, "top level");
  cfg.runs = static_cast<int>(get_int(doc.root, "runs", 0, "top level"));
  cfg.seed = static_cast<std::uint64_t>(
      get_int(doc.root, "seed", 1, "top level"));
  cfg.out_dir = get_string(doc.root, "out", "results/" + cfg.name, "top level");
  cfg.full_trace = get_bool(doc.root, "full_trace", false, "top level");

  auto env_it = doc.tables.find("environment");
  if (env_it == doc.tables.end())
    throw ConfigError("missing [environment] table");
  cfg.env = parse_environment(env_it->second);

  auto alg_it = doc.table_arrays.find("algorithm");
  if (alg_it != doc.table_arrays.end())
    for (std::size_t i = 0; i < alg_it->second.size(); ++i)
      cfg.algorithms.push_back(parse_algorithm(alg_it->second[i], i));

  validate_config(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Environment preparation

PreparedEnvironment::PreparedEnvironment(const EnvironmentSpec& spec,
                                         std::uint64_t base_seed)
    : spec_(spec) {
  if (!spec.features.empty()) {
    const FeatureDataset ds = load_feature_csv(spec.features, spec.target_column);
    theta_fixed_ = fit_theta_from_dataset(ds, spec.fit_lambda);
    action_pool_ = ds.rows;
    sigma_ = spec.sigma.value_or(residual_sigma(ds, theta_fixed_));
  } else if (!spec.ratings.empty()) {
    const RatingsMatrix ratings = load_ratings_csv(spec.ratings);
    Rng als_rng(derive_seed(base_seed, {0x414c53}));
    const Factorization f = als_factorize(ratings, spec.rank, spec.als_iters,
                                          spec.als_lambda, als_rng);
    action_pool_ = f.item_vectors;
    user_pool_ = f.user_vectors;
    sigma_ = spec.sigma.value_or(observed_rmse(ratings, f));
  } else {
    sigma_ = spec.sigma.value_or(0.5);
  }
}

Environment PreparedEnvironment::make(std::uint64_t env_seed) const {
  Rng rng(env_seed);
  if (spec_.kind == "k_armed")
    return gen_k_armed_gap(spec_.K, spec_.gap, sigma_);
  if (spec_.kind == "linear_changing")
    return gen_synthetic_changing(spec_.d, spec_.K, sigma_, rng);
  if (!spec_.features.empty())
    return dataset_to_env(action_pool_, theta_fixed_, spec_.K, sigma_, rng);
  if (!spec_.ratings.empty()) {
    const int user = rng.uniform_int(static_cast<int>(user_pool_.rows()));
    return dataset_to_env(action_pool_, user_pool_.row(user).transpose(),
                          spec_.K, sigma_, rng);
  }
  return gen_synthetic_linear(spec_.d, spec_.K, sigma_, rng);
}

// ---------------------------------------------------------------------------
// Simulation loop

std::vector<long> checkpoint_rounds(long horizon) {
  std::set<long> rounds = {1, horizon};
  const long step = std::max<long>(1, horizon / 100);
  for (long r = step; r <= horizon; r += step) rounds.insert(r);
  return {rounds.begin(), rounds.end()};
}

namespace {

bool theta_covered(const LinearState& st, const Eigen::VectorXd& theta_star) {
  const Eigen::VectorXd theta_hat = st.design.inverse() * st.xty;
  const Eigen::VectorXd diff = theta_hat - theta_star;
  const double norm = std::sqrt(std::max(0.0, diff.dot(st.design.matrix() * diff)));
  return norm <= st.width_cfg.width(st.design.count()) + 1e-9;
}

// Per-round width bounds for the k-armed constrained policy, checked only
// in rounds where every interval covers its mean: the regret gap is capped
// by the chosen and optimal widths, and the chosen arm is at least as
// uncertain as the optimal one.
void check_karmed_width_bounds(const Decision& dec, const Environment& env) {
  const Eigen::VectorXd& mu = env.theta_star();
  const Eigen::VectorXd width = (dec.view.ucb - dec.view.lcb) * 0.5;
  for (int a = 0; a < mu.size(); ++a)
    if (std::abs(dec.view.theta_hat(a) - mu(a)) > width(a) + 1e-12)
      return;  // coverage event does not hold this round

  const int astar = env.optimal_arm();
  const double gap = mu(astar) - mu(dec.arm);
  if (gap > 2.0 * width(dec.arm) + 2.0 * width(astar) + 1e-9)
    throw std::logic_error("per-round regret bound violated under coverage");

  const bool astar_plausible = dec.view.ucb(astar) >= dec.view.lcb.maxCoeff();
  if (astar_plausible && width.allFinite() &&
      width(dec.arm) < width(astar) - 1e-12)
    throw std::logic_error("chosen arm width below optimal arm width");
}

}  // namespace

RunResult simulate_run(const Environment& env, Policy& policy, long horizon,
                       const std::vector<long>& checkpoints, Rng& ctx_rng,
                       Rng& noise_rng, Rng& policy_rng,
                       const SimulateOptions& opts) {
  RunResult result;
  result.regret_at.reserve(checkpoints.size());
  result.q_at.reserve(checkpoints.size());

  const auto* linear = dynamic_cast<const LinearPolicyBase*>(&policy);
  const bool karmed_code =
      env.kind() == EnvKind::k_armed && policy.name() == "code";

  if (opts.track_coverage && linear)
    result.coverage_all = theta_covered(linear->state(), env.theta_star());

  MetricsAccumulator metrics;
  std::size_t next_cp = 0;
  for (long t = 1; t <= horizon; ++t) {
    const RoundContext ctx = env.next_round(t, ctx_rng);
    const Decision dec = policy.decide(ctx, policy_rng);

    const double regret = instant_regret(ctx, env.theta_star(), dec.arm);
    const std::vector<int> plausible = plausible_set(dec.view.ucb, dec.view.lcb);
    const double uncertainty =
        model_uncertainty(dec.view.theta_hat, env.theta_star(), ctx, plausible);
    metrics.add_round(regret, uncertainty);
    if (dec.chosen_m2) result.potential_sum += *dec.chosen_m2;
    if (karmed_code) check_karmed_width_bounds(dec, env);

    const double reward = env.sample_reward(ctx.action(dec.arm), noise_rng);
    policy.observe(ctx, dec.arm, reward);

    if (opts.track_coverage && linear && result.coverage_all &&
        !theta_covered(linear->state(), env.theta_star()))
      result.coverage_all = false;

    if (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
      result.regret_at.push_back(metrics.regret_cum());
      result.q_at.push_back(metrics.q_cum());
      ++next_cp;
    }
  }

  // Elliptical potential: sum_t ||A_t||^2_{V_t^-1} <= 2 d log(d + n L^2 / lambda)
  // whenever the policy's regularizer dominates the squared action norms.
  if (linear) {
    const double L = env.action_norm_bound();
    const double lambda = linear->state().design.lambda();
    if (lambda >= L * L) {
      const double d = static_cast<double>(linear->state().design.dim());
      const double bound =
          2.0 * d *
          std::log(d + static_cast<double>(horizon) * L * L / lambda);
      if (result.potential_sum > bound + 1e-6)
        throw std::logic_error("elliptical potential bound violated");
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Experiment runner

std::vector<AggregateRow> aggregate_rows(const std::vector<RawRow>& raw,
                                         int num_algorithms) {
  // Group values per (alg, round) in raw order; raw is ordered by run within
  // an algorithm, so summation order is deterministic.
  std::vector<std::map<long, std::vector<double>>> regret(num_algorithms),
      q(num_algorithms);
  for (const RawRow& row : raw) {
    regret[row.alg][row.round].push_back(row.regret_cum);
    q[row.alg][row.round].push_back(row.q_cum);
  }

  const auto mean_se = [](const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return std::make_pair(mean, 0.0);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double n = static_cast<double>(xs.size());
    return std::make_pair(mean, std::sqrt(ss / (n - 1.0) / n));
  };

  std::vector<AggregateRow> rows;
  for (int a = 0; a < num_algorithms; ++a) {
    for (const auto& [round, values] : regret[a]) {
      AggregateRow row;
      row.alg = a;
      row.round = round;
      std::tie(row.regret_mean, row.regret_se) = mean_se(values);
      std::tie(row.q_mean, row.q_se) = mean_se(q[a].at(round));
      rows.push_back(row);
    }
  }
  return rows;
}

ResultsTable run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const PreparedEnvironment prepared(cfg.env, cfg.seed);

  std::vector<PolicyConfig> policy_cfgs;
  for (const AlgorithmSpec& alg : cfg.algorithms) {
    PolicyConfig pc = alg.config;
    pc.horizon = cfg.horizon;
    pc.R = alg.noise_scale.value_or(prepared.sigma());
    policy_cfgs.push_back(pc);
  }

  std::vector<long> rounds;
  if (cfg.full_trace) {
    rounds.resize(cfg.horizon);
    for (long t = 1; t <= cfg.horizon; ++t) rounds[t - 1] = t;
  } else {
    rounds = checkpoint_rounds(cfg.horizon);
  }

  const int num_algs = static_cast<int>(cfg.algorithms.size());
  const std::size_t num_tasks =
      static_cast<std::size_t>(num_algs) * static_cast<std::size_t>(cfg.runs);
  std::vector<RunResult> results(num_tasks);

  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= num_tasks) return;
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        const int alg = static_cast<int>(task) / cfg.runs;
        const int run = static_cast<int>(task) % cfg.runs;
        const Environment env =
            prepared.make(derive_seed(cfg.seed, {std::uint64_t(run), 0}));
        Rng ctx_rng(derive_seed(cfg.seed, {std::uint64_t(run), 1}));
        Rng noise_rng(derive_seed(cfg.seed, {std::uint64_t(run), 2}));
        Rng policy_rng(derive_seed(
            cfg.seed, {std::uint64_t(run), 3 + std::uint64_t(alg),
                       policy_cfgs[alg].seed}));
        const auto policy = make_policy(policy_cfgs[alg], env);
        results[task] = simulate_run(env, *policy, cfg.horizon, rounds,
                                     ctx_rng, noise_rng, policy_rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const int threads =
      std::min<int>(thread_budget(), static_cast<int>(num_tasks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ResultsTable table;
  for (const AlgorithmSpec& alg : cfg.algorithms)
    table.algorithm_names.push_back(alg.label);
  table.raw.reserve(num_tasks * rounds.size());
  for (int a = 0; a < num_algs; ++a)
    for (int run = 0; run < cfg.runs; ++run) {
      const RunResult& rr =
          results[static_cast<std::size_t>(a) * cfg.runs + run];
      for (std::size_t i = 0; i < rounds.size(); ++i)
        table.raw.push_back({a, run, rounds[i], rr.regret_at[i], rr.q_at[i]});
    }
  table.aggregate = aggregate_rows(table.raw, num_algs);
  return table;
}

// ---------------------------------------------------------------------------
// Output files

namespace {

void write_csvs(const ResultsTable& table, const fs::path& dir) {
  {
    std::ofstream raw(dir / "raw.csv");
    if (!raw) throw IoError("cannot write " + (dir / "raw.csv").string());
    raw << "algorithm,run,round,regret_cum,q_cum\n";
    for (const RawRow& r : table.raw)
      raw << table.algorithm_names[r.alg] << ',' << r.run << ',' << r.round
          << ',' << fmt_full(r.regret_cum) << ',' << fmt_full(r.q_cum) << '\n';
  }
  {
    std::ofstream agg(dir / "aggregate.csv");
    if (!agg) throw IoError("cannot write " + (dir / "aggregate.csv").string());
    agg << "algorithm,round,regret_mean,regret_se,q_mean,q_se\n";
    for (const AggregateRow& r : table.aggregate)
      agg << table.algorithm_names[r.alg] << ',' << r.round << ','
          << fmt_full(r.regret_mean) << ',' << fmt_full(r.regret_se) << ','
          << fmt_full(r.q_mean) << ',' << fmt_full(r.q_se) << '\n';
  }
}

void write_plots(const ResultsTable& table, const fs::path& dir) {
  std::vector<PlotSeries> regret_series, q_series;
  for (std::size_t a = 0; a < table.algorithm_names.size(); ++a) {
    PlotSeries rs, qs;
    rs.label = qs.label = table.algorithm_names[a];
    for (const AggregateRow& row : table.aggregate) {
      if (row.alg != static_cast<int>(a)) continue;
      rs.x.push_back(static_cast<double>(row.round));
      rs.y.push_back(row.regret_mean);
      rs.band.push_back(row.regret_se);
      qs.x.push_back(static_cast<double>(row.round));
      qs.y.push_back(row.q_mean);
      qs.band.push_back(row.q_se);
    }
    if (rs.x.empty()) {
      std::fprintf(stderr,
                   "emit_outputs: no aggregate rows for '%s'; series omitted\n",
                   table.algorithm_names[a].c_str());
      continue;
    }
    regret_series.push_back(std::move(rs));
    q_series.push_back(std::move(qs));
  }
  write_line_plot((dir / "regret.svg").string(), "Cumulative regret", "round",
                  "mean cumulative regret", regret_series);
  write_line_plot((dir / "interpretability.svg").string(),
                  "Cumulative model uncertainty", "round", "mean Q_n",
                  q_series);
}

}  // namespace

void emit_outputs(const ResultsTable& table, const std::string& out_dir) {
  if (table.raw.empty()) throw std::invalid_argument("emit_outputs: empty table");
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw IoError("cannot create output directory: " + out_dir);
  write_csvs(table, dir);
  write_plots(table, dir);
}

ResultsTable load_raw_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "algorithm,run,round,regret_cum,q_cum")
    throw IoError("unexpected raw.csv header in " + path);

  ResultsTable table;
  std::map<std::string, int> alg_index;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string alg, cell;
    RawRow row;
    try {
      std::getline(ss, alg, ',');
      std::getline(ss, cell, ',');
      row.run = std::stoi(cell);
      std::getline(ss, cell, ',');
      row.round = std::stol(cell);
      std::getline(ss, cell, ',');
      row.regret_cum = std::stod(cell);
      std::getline(ss, cell, ',');
      row.q_cum = std::stod(cell);
    } catch (const std::exception&) {
      throw IoError(path + ": malformed row at line " + std::to_string(line_no));
    }
    auto [it, inserted] =
        alg_index.try_emplace(alg, static_cast<int>(table.algorithm_names.size()));
    if (inserted) table.algorithm_names.push_back(alg);
    row.alg = it->second;
    table.raw.push_back(row);
  }
  table.aggregate =
      aggregate_rows(table.raw, static_cast<int>(table.algorithm_names.size()));
  return table;
}

}  // namespace bandit
