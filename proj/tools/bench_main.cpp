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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>

#include "bandit/errors.hpp"
#include "bandit/harness.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

fs::path config_dir() {
  if (const char* env = std::getenv("BENCH_CONFIG_DIR")) return env;
  if (fs::is_directory("configs")) return "configs";
#ifdef BENCH_DEFAULT_CONFIG_DIR
  return BENCH_DEFAULT_CONFIG_DIR;
#else
  return "configs";
#endif
}

int run_command(const std::string& config_path, long seed_override,
                int runs_override, const std::string& out_override,
                bool full_trace) {
  bandit::ExperimentConfig cfg =
      bandit::load_experiment_config(config_path);
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  if (runs_override > 0) cfg.runs = runs_override;
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (full_trace) cfg.full_trace = true;

  std::printf("experiment %s: %zu algorithm(s), %d run(s), horizon %ld\n",
              cfg.name.c_str(), cfg.algorithms.size(), cfg.runs, cfg.horizon);
  const bandit::ResultsTable table = bandit::run_experiment(cfg);
  bandit::emit_outputs(table, cfg.out_dir);
  std::printf("wrote raw.csv, aggregate.csv, regret.svg, interpretability.svg "
              "to %s\n",
              cfg.out_dir.c_str());
  return kExitOk;
}

int plot_command(const std::string& in_dir) {
  const fs::path dir(in_dir);
  const bandit::ResultsTable table =
      bandit::load_raw_csv((dir / "raw.csv").string());
  bandit::emit_outputs(table, in_dir);
  std::printf("re-aggregated %zu raw rows into %s\n", table.raw.size(),
              in_dir.c_str());
  return kExitOk;
}

int list_configs_command() {
  const fs::path dir = config_dir();
  if (!fs::is_directory(dir)) {
    std::fprintf(stderr, "no config directory at %s\n", dir.string().c_str());
    return kExitIo;
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".toml")
      names.push_back(entry.path().string());
  std::sort(names.begin(), names.end());
  for (const auto& name : names) std::printf("%s\n", name.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bandit algorithm benchmark runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_dir;
  long seed = -1;
  int runs = 0;
  bool full_trace = false;

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("--config", config_path, "experiment TOML file")->required();
  run->add_option("--seed", seed, "override the base seed");
  run->add_option("--runs", runs, "override the run count");
  run->add_option("--out", out_dir, "override the output directory");
  run->add_flag("--full-trace", full_trace, "log every round, not checkpoints");

  CLI::App* plot = app.add_subcommand("plot", "re-plot from an output directory");
  plot->add_option("--in", in_dir, "directory containing raw.csv")->required();

  app.add_subcommand("list-configs", "list shipped experiment configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed())
      return run_command(config_path, seed, runs, out_dir, full_trace);
    if (plot->parsed()) return plot_command(in_dir);
    return list_configs_command();
  } catch (const bandit::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const bandit::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
