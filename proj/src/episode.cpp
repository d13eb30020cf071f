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

#include "uavbs/episode.hpp"

#include <algorithm>
#include <random>

namespace uavbs {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Goal: return "goal";
    case Termination::Dead: return "dead";
    case Termination::MaxStep: return "max_step";
  }
  return "?";
}

GoalTracker::GoalTracker(const EpisodeRules& rules, int n_devices, int n_uavs, int capacity)
    : enabled_(rules.goal_enabled && n_devices > 0),
      target_(rules.goal_fraction *
              static_cast<double>(std::min<long long>(
                  n_devices, static_cast<long long>(n_uavs) * capacity))),
      sustain_(rules.goal_sustain_steps) {}

bool GoalTracker::observe(int total_connected) {
  if (!enabled_) return false;
  streak_ = static_cast<double>(total_connected) >= target_ ? streak_ + 1 : 0;
  return streak_ >= sustain_;
}

bool battery_depleted(const EpisodeRules& rules, std::span<const EnergyLedger> ledgers) {
  if (rules.battery_budget_j <= 0.0) return false;
  return std::any_of(ledgers.begin(), ledgers.end(), [&](const EnergyLedger& l) {
    return total_energy(l) > rules.battery_budget_j;
  });
}

Rng make_rng(std::uint64_t seed, int episode, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(episode), static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

void finalize_totals(EpisodeMetrics& m) {
  m.total_connected = 0;
  m.total_energy_j = 0.0;
  for (const AgentMetrics& a : m.agents) {
    m.total_connected += a.connected;
    m.total_energy_j += a.energy_j;
  }
}

}  // namespace uavbs
