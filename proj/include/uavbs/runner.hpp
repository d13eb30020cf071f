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

// Experiment orchestration: runs of episodes, summary statistics and CSV
// output.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavbs/agent.hpp"
#include "uavbs/baselines.hpp"
#include "uavbs/config.hpp"
#include "uavbs/episode.hpp"
#include "uavbs/world.hpp"

namespace uavbs {

/// Learning state carried across the episodes of one run.
struct RunState {
  std::vector<QTable> tables;
  ClusterQlState cluster;
};

/// Device population of one run. Clustered centers are drawn from the run
/// seed unless the config lists them.
WorldState scenario_world(const ExperimentConfig& cfg, std::uint64_t run_seed);

/// One DQLSI episode. Every episode restarts the UAVs at their start
/// positions and the devices at the run's initial placement; the Q-tables in
/// `state` persist.
EpisodeMetrics run_episode(const ExperimentConfig& cfg, const WorldState& world,
                           std::uint64_t run_seed, int run, int episode, RunState& state);

/// All rows of one run for the configured strategy. Placement searches
/// produce a single row.
std::vector<EpisodeMetrics> run_single(const ExperimentConfig& cfg, int run);

struct Stat {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;  // population
  int count = 0;
};

Stat describe(const std::vector<double>& values);

struct Summary {
  Stat connected_fraction;
  Stat energy_j;
  Stat covered_km2;
};

struct ExperimentResult {
  std::vector<EpisodeMetrics> rows;
  Summary summary;
};

class RunFailed : public std::runtime_error {
 public:
  RunFailed(std::uint64_t seed, const std::string& what);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// n_runs independent runs with seeds base_seed + run. Runs may execute on
/// `jobs` threads; results do not depend on it.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 1);

/// Statistics over the last `window` rows of each run, computed from the
/// values as they are printed in the CSV.
Summary summarize(const std::vector<EpisodeMetrics>& rows, int window);

std::string csv_header(int n_uavs);
std::string csv_row(const EpisodeMetrics& m);
/// Six significant digits, as every CSV number is printed.
std::string format_number(double v);

void emit_csv(const std::vector<EpisodeMetrics>& rows, int n_uavs,
              const std::filesystem::path& path);
void emit_summary(const Summary& s, const ExperimentConfig& cfg,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path& text_path);

}  // namespace uavbs
