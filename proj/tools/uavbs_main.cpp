// Copyright 2026 The uavbs Authors.
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

// Command-line front end: run, validate, compare, demo.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavbs/config.hpp"
#include "uavbs/kernels/kernels.hpp"
#include "uavbs/runner.hpp"

namespace fs = std::filesystem;
using namespace uavbs;

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;
constexpr const char* kOutputEnv = "UAVBS_OUTPUT_DIR";

fs::path output_root(const ExperimentConfig& cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return cfg.output_dir;
}

void write_outputs(const ExperimentResult& res, const ExperimentConfig& cfg,
                   const fs::path& dir) {
  emit_csv(res.rows, cfg.n_uavs, dir / "episodes.csv");
  emit_summary(res.summary, cfg, dir / "summary.csv", dir / "summary.txt");
}

void print_summary_line(const char* label, const Summary& s) {
  std::printf("%s: connected %.4f (min %.4f, max %.4f), energy %.1f J, covered %.4f km2\n",
              label, s.connected_fraction.mean, s.connected_fraction.min,
              s.connected_fraction.max, s.energy_j.mean, s.covered_km2.mean);
}

int cmd_run(const std::string& path, const std::string& out_flag, int jobs) {
  ExperimentConfig cfg = load_config(path);
  const fs::path dir = output_root(cfg, out_flag);
  const ExperimentResult res = run_experiment(cfg, jobs);
  write_outputs(res, cfg, dir);
  print_summary_line(std::string(to_string(cfg.strategy)).c_str(), res.summary);
  std::printf("wrote %zu rows to %s\n", res.rows.size(), (dir / "episodes.csv").c_str());
  return 0;
}

int cmd_validate(const std::string& path) {
  const ExperimentConfig cfg = load_config(path);
  std::printf("%s: ok (strategy %s, %d UAVs, %d devices, %d runs x %d episodes)\n",
              path.c_str(), std::string(to_string(cfg.strategy)).c_str(), cfg.n_uavs,
              cfg.scenario.n_static + cfg.scenario.n_mobile, cfg.n_runs, cfg.n_episodes);
  return 0;
}

int cmd_compare(const std::string& dir_arg, const std::string& out_flag, int jobs) {
  const fs::path dir = dir_arg;
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".ini") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no .ini files in " + dir.string());

  // Validate everything before spending time on simulation.
  std::vector<ExperimentConfig> configs;
  for (const fs::path& f : files) configs.push_back(load_config(f));

  const Strategy order[] = {Strategy::Dqlsi, Strategy::Exhaustive, Strategy::Iterative,
                            Strategy::ClusterQl};
  std::string table =
      "scenario,strategy,rows,connected_fraction_mean,connected_fraction_std,"
      "total_energy_j_mean,covered_km2_mean\n";
  std::printf("%-16s %-6s %10s %10s %14s %10s\n", "scenario", "strat", "connected", "std",
              "energy_j", "km2");
  fs::path root;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string stem = files[i].stem().string();
    root = output_root(configs[i], out_flag);
    for (Strategy s : order) {
      ExperimentConfig cfg = configs[i];
      cfg.strategy = s;
      const ExperimentResult res = run_experiment(cfg, jobs);
      const std::string name(to_string(s));
      write_outputs(res, cfg, root / stem / name);
      const Summary& sm = res.summary;
      table += stem + "," + name + "," + std::to_string(sm.connected_fraction.count) + "," +
               format_number(sm.connected_fraction.mean) + "," +
               format_number(sm.connected_fraction.std) + "," +
               format_number(sm.energy_j.mean) + "," + format_number(sm.covered_km2.mean) +
               "\n";
      std::printf("%-16s %-6s %10.4f %10.4f %14.1f %10.4f\n", stem.c_str(), name.c_str(),
                  sm.connected_fraction.mean, sm.connected_fraction.std, sm.energy_j.mean,
                  sm.covered_km2.mean);
      std::fflush(stdout);
    }
  }
  std::ofstream(root / "comparison.csv", std::ios::binary) << table;
  std::printf("wrote %s\n", (root / "comparison.csv").c_str());
  return 0;
}

ExperimentConfig demo_config() {
  ExperimentConfig cfg;
  cfg.n_uavs = 2;
  cfg.n_runs = 1;
  cfg.n_episodes = 5;
  cfg.summary_window = 2;
  cfg.scenario.area = {400.0, 400.0};
  cfg.scenario.n_static = 40;
  cfg.scenario.n_mobile = 20;
  cfg.learning.learn.max_step = 200;
  cfg.channel.sinr_threshold = 0.7;
  cfg.output_dir = "results/demo";
  return cfg;
}

int cmd_demo(const std::string& out_flag) {
  const ExperimentConfig cfg = demo_config();
  const ExperimentResult res = run_experiment(cfg);
  const fs::path dir = output_root(cfg, out_flag);
  write_outputs(res, cfg, dir);
  print_summary_line("demo", res.summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-UAV base-station placement simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_flag;
  int jobs = 1;
  app.add_option("-o,--output-dir", out_flag,
                 std::string("Output directory (overrides ") + kOutputEnv + " and the config)");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("-j,--jobs", jobs, "Runs simulated in parallel")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config_path, "Config file")->required();

  std::string config_dir;
  auto* compare = app.add_subcommand(
      "compare", "Run every strategy on each config in a directory and tabulate");
  compare->add_option("config-dir", config_dir, "Directory of .ini configs")->required();
  compare->add_option("-j,--jobs", jobs, "Runs simulated in parallel")
      ->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("demo", "Tiny built-in scenario");
  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected kernel set to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }
  if (show_kernels) std::cerr << "kernels: " << kernels::active().name << "\n";

  try {
    if (*run) return cmd_run(config_path, out_flag, jobs);
    if (*validate) return cmd_validate(config_path);
    if (*compare) return cmd_compare(config_dir, out_flag, jobs);
    if (*demo) return cmd_demo(out_flag);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
  return kUsageError;
}
