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

// Independent tabular Q-learner run by every UAV.
//
// The local state is the UAV's lattice cell, its altitude rung and a coarse
// bucket of the distance to its closest neighbour. Rewards combine a
// cooperative +/-1 term (did the neighbourhood's total connection score
// grow?), a normalised change in average per-step energy and a +/-1 bonus
// for the UAV's own connection score. Neighbours exchange only their
// connection scores.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "uavbs/geometry.hpp"
#include "uavbs/world.hpp"

namespace uavbs {

enum class ActionKind : std::uint8_t { Up, Down, Forward, Backward, Left, Right, Stationary };

inline constexpr int kActionCount = 7;
inline constexpr std::array<ActionKind, kActionCount> kAllActions = {
    ActionKind::Up,    ActionKind::Down,  ActionKind::Forward,   ActionKind::Backward,
    ActionKind::Left,  ActionKind::Right, ActionKind::Stationary};

std::string_view to_string(ActionKind a);

enum class NeighborBucket : std::uint8_t { Near, Mid, Far };

struct StateKey {
  int grid_x = 0;
  int grid_y = 0;
  int alt_level = 0;
  NeighborBucket neighbor = NeighborBucket::Far;

  friend bool operator==(const StateKey&, const StateKey&) = default;
};

/// Discretisation of UAV positions into table rows.
struct StateSpace {
  AreaSpec area;
  double cell_m = 20.0;
  std::vector<double> altitudes = {100.0, 120.0, 140.0, 160.0, 180.0, 200.0};
  double near_m = 50.0;
  double mid_m = 200.0;

  void validate() const;
  int nx() const;
  int ny() const;
  int n_alt() const { return static_cast<int>(altitudes.size()); }
  std::size_t size() const;
  std::size_t index(const StateKey& key) const;
  /// Ladder rung of `h`; throws std::invalid_argument when `h` is off the ladder.
  int altitude_level(double h) const;
};

class QTable {
 public:
  QTable() = default;
  explicit QTable(std::size_t n_states);

  std::size_t n_states() const { return values_.size() / kActionCount; }
  double value(std::size_t state, ActionKind a) const {
    return values_[state * kActionCount + static_cast<std::size_t>(a)];
  }
  void set(std::size_t state, ActionKind a, double v);
  std::span<const double> row(std::size_t state) const {
    return {values_.data() + state * kActionCount, kActionCount};
  }
  double max_value(std::size_t state) const;
  /// Number of (state, action) cells written at least once.
  std::size_t touched_count() const { return touched_count_; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::vector<double> values_;
  std::vector<std::uint8_t> touched_;
  std::size_t touched_count_ = 0;
};

struct LearnParams {
  double learning_rate = 0.1;
  double discount = 0.9;
  double epsilon_start = 1.0;
  double epsilon_decay = 0.995;  // multiplicative, per episode
  double epsilon_min = 0.05;
  int max_step = 10000;

  void validate() const;
  double epsilon_for_episode(int episode) const;
};

StateKey discretize_state(const UavPosition& pos, std::span<const UavPosition> neighbors,
                          const StateSpace& space);

struct MoveResult {
  UavPosition position;
  bool moved = false;
  bool boundary_hit = false;
};

/// One lattice move. Up/Down step along the altitude ladder; moves leaving
/// the area or the ladder leave the UAV where it is and set boundary_hit.
/// Forward is +y, Right is +x.
MoveResult apply_action(const UavPosition& pos, ActionKind a, const AreaSpec& area,
                        std::span<const double> ladder, double step_m = 20.0);

/// Lowest-index maximiser of a Q row.
ActionKind greedy_action(std::span<const double> row);

ActionKind select_action(const QTable& q, std::size_t state, double epsilon, Rng& rng);

double compute_reward(int own_now, int own_prev, double e_now, double e_prev,
                      int locality_now, int locality_prev);

void q_update(QTable& q, std::size_t state, ActionKind a, double reward,
              std::size_t next_state, const LearnParams& p);

struct NeighborReport {
  std::vector<std::pair<int, int>> neighbor_scores;  // (uav index, score)
  int locality_score = 0;                            // own + neighbours
  int messages = 0;
  int cost_bits = 0;
};

/// Collects the connection scores broadcast by every other UAV within
/// `radius` meters of `self`.
NeighborReport broadcast_and_collect(int self, std::span<const int> scores,
                                     std::span<const UavPosition> positions, double radius,
                                     int bits_per_message = 16);

}  // namespace uavbs
