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

// Experiment configuration: an INI file with one section per subsystem.
// See README.md for the full key list.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavbs/agent.hpp"
#include "uavbs/energy.hpp"
#include "uavbs/geometry.hpp"
#include "uavbs/radio.hpp"
#include "uavbs/world.hpp"

namespace uavbs {

enum class Strategy { Dqlsi, Exhaustive, Iterative, ClusterQl };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

enum class DistributionKind { Uniform, Clustered };

struct ScenarioConfig {
  AreaSpec area;
  int n_static = 400;
  int n_mobile = 0;
  DistributionKind distribution = DistributionKind::Uniform;
  int cluster_count = 4;  // 0 draws 2..4 per run
  double cluster_spread_m = 80.0;
  std::vector<Vec2> cluster_centers;  // empty: drawn per run
  MobilityParams mobility;
};

struct EpisodeRules {
  bool goal_enabled = true;
  double goal_fraction = 0.95;
  int goal_sustain_steps = 50;
  double battery_budget_j = 0.0;  // 0 disables the "UAV dies" check
};

struct LearningConfig {
  LearnParams learn;
  double step_m = 20.0;
  std::vector<double> altitudes = {100.0, 120.0, 140.0, 160.0, 180.0, 200.0};
  double near_m = 50.0;
  double mid_m = 200.0;
  double proximity_m = 1500.0;
  int broadcast_bits = 16;
  EpisodeRules rules;
  std::vector<UavPosition> start_positions;  // empty: corner defaults
};

struct ExhaustiveConfig {
  double grid_m = 100.0;
  std::vector<double> altitudes = {100.0, 200.0};
  std::uint64_t max_combinations = 100'000'000;
};

struct IterativeConfig {
  int max_rounds = 200;
};

struct ClusterQlConfig {
  int kmeans_iterations = 50;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Strategy strategy = Strategy::Dqlsi;
  int n_uavs = 4;
  int n_episodes = 100;
  int n_runs = 20;
  std::uint64_t base_seed = 1;
  std::string output_dir = "results";
  // Episodes per run that feed the summary statistics.
  int summary_window = 5;

  ScenarioConfig scenario;
  ChannelParams channel;
  PowerModelParams energy;
  LearningConfig learning;
  ExhaustiveConfig exhaustive;
  IterativeConfig iterative;
  ClusterQlConfig cluster_ql;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  StateSpace state_space() const;
  /// Start positions, falling back to corner offsets at the top rung.
  std::vector<UavPosition> starts() const;
};

/// Corner-offset starting points: UAV k starts `offset` meters in from
/// corner k mod 4, walking further inward for every extra lap.
std::vector<UavPosition> default_start_positions(const AreaSpec& area, int n_uavs,
                                                 double altitude, double offset = 100.0,
                                                 double step_m = 20.0);

/// Parses and validates; throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_ini(const ExperimentConfig& cfg);

}  // namespace uavbs
