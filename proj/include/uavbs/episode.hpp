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

// Pieces shared by the episodic strategies: per-episode metrics, the
// termination predicates and seed derivation.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "uavbs/config.hpp"
#include "uavbs/energy.hpp"
#include "uavbs/world.hpp"

namespace uavbs {

enum class Termination { Goal, Dead, MaxStep };

std::string_view to_string(Termination t);

struct AgentMetrics {
  double reward = 0.0;
  double energy_j = 0.0;
  int connected = 0;

  friend bool operator==(const AgentMetrics&, const AgentMetrics&) = default;
};

struct EpisodeMetrics {
  int run = 0;
  int episode = 0;
  std::vector<AgentMetrics> agents;
  int total_connected = 0;
  int n_devices = 0;
  double total_energy_j = 0.0;
  double covered_km2 = 0.0;
  int steps = 0;
  Termination cause = Termination::MaxStep;
  // Largest per-agent broadcast cost seen in any step, bits.
  int max_comm_bits = 0;

  double connected_fraction() const {
    return n_devices == 0 ? 0.0 : static_cast<double>(total_connected) / n_devices;
  }
  friend bool operator==(const EpisodeMetrics&, const EpisodeMetrics&) = default;
};

/// "Goal reached": the total connection score stays at or above
/// goal_fraction * min(|devices|, n_uavs * capacity) for goal_sustain_steps
/// consecutive steps.
class GoalTracker {
 public:
  GoalTracker(const EpisodeRules& rules, int n_devices, int n_uavs, int capacity);

  /// Feeds one step's total; returns true once the goal holds.
  bool observe(int total_connected);
  double target() const { return target_; }

 private:
  bool enabled_;
  double target_;
  int sustain_;
  int streak_ = 0;
};

/// "UAV dies": some UAV's propulsion energy exceeded the battery budget.
bool battery_depleted(const EpisodeRules& rules, std::span<const EnergyLedger> ledgers);

/// Deterministic generator for (seed, episode, stream).
Rng make_rng(std::uint64_t seed, int episode, int stream);

/// Flight speed of one lattice step lasting one time step, 0 when hovering.
inline double step_speed(bool moved, double step_m, double dt) {
  return moved ? step_m / dt : 0.0;
}

/// Summed per-agent energy and final scores into the aggregate fields.
void finalize_totals(EpisodeMetrics& m);

}  // namespace uavbs
