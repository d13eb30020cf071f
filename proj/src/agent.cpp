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

#include "uavbs/agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavbs {
namespace {

constexpr double kLadderTolerance = 1e-6;

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

std::string_view to_string(ActionKind a) {
  switch (a) {
    case ActionKind::Up: return "up";
    case ActionKind::Down: return "down";
    case ActionKind::Forward: return "forward";
    case ActionKind::Backward: return "backward";
    case ActionKind::Left: return "left";
    case ActionKind::Right: return "right";
    case ActionKind::Stationary: return "stationary";
  }
  return "?";
}

void StateSpace::validate() const {
  validate_area(area);
  if (!(cell_m > 0.0)) throw std::invalid_argument("state cell size must be positive");
  if (altitudes.empty()) throw std::invalid_argument("altitude ladder must not be empty");
  if (!std::is_sorted(altitudes.begin(), altitudes.end()) ||
      std::adjacent_find(altitudes.begin(), altitudes.end()) != altitudes.end()) {
    throw std::invalid_argument("altitude ladder must be strictly increasing");
  }
  if (!(altitudes.front() > 0.0)) throw std::invalid_argument("altitudes must be positive");
  if (!(near_m > 0.0) || !(mid_m > near_m)) {
    throw std::invalid_argument("neighbour thresholds must satisfy 0 < near < mid");
  }
}

int StateSpace::nx() const { return std::max(1, static_cast<int>(std::ceil(area.width / cell_m))); }
int StateSpace::ny() const { return std::max(1, static_cast<int>(std::ceil(area.height / cell_m))); }

std::size_t StateSpace::size() const {
  return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()) *
         static_cast<std::size_t>(n_alt()) * 3;
}

std::size_t StateSpace::index(const StateKey& key) const {
  const auto gx = static_cast<std::size_t>(key.grid_x);
  const auto gy = static_cast<std::size_t>(key.grid_y);
  const auto alt = static_cast<std::size_t>(key.alt_level);
  return ((gx * static_cast<std::size_t>(ny()) + gy) * static_cast<std::size_t>(n_alt()) + alt) *
             3 +
         static_cast<std::size_t>(key.neighbor);
}

int StateSpace::altitude_level(double h) const {
  for (std::size_t k = 0; k < altitudes.size(); ++k) {
    if (std::abs(altitudes[k] - h) <= kLadderTolerance) return static_cast<int>(k);
  }
  throw std::invalid_argument("altitude " + std::to_string(h) + " m is not on the ladder");
}

QTable::QTable(std::size_t n_states)
    : values_(n_states * kActionCount, 0.0), touched_(n_states * kActionCount, 0) {}

void QTable::set(std::size_t state, ActionKind a, double v) {
  const std::size_t k = state * kActionCount + static_cast<std::size_t>(a);
  values_[k] = v;
  if (touched_[k] == 0) {
    touched_[k] = 1;
    ++touched_count_;
  }
}

double QTable::max_value(std::size_t state) const {
  const auto r = row(state);
  return *std::max_element(r.begin(), r.end());
}

void LearnParams::validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("learning.lr must lie in (0, 1]");
  }
  if (!(discount >= 0.0 && discount <= 1.0)) {
    throw std::invalid_argument("learning.discount must lie in [0, 1]");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0) ||
      !(epsilon_min >= 0.0 && epsilon_min <= 1.0)) {
    throw std::invalid_argument("learning epsilons must lie in [0, 1]");
  }
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) {
    throw std::invalid_argument("learning.epsilon_decay must lie in (0, 1]");
  }
  if (max_step < 0) throw std::invalid_argument("learning.max_step must be >= 0");
}

double LearnParams::epsilon_for_episode(int episode) const {
  const double e = epsilon_start * std::pow(epsilon_decay, static_cast<double>(episode));
  return std::max(epsilon_min, e);
}

StateKey discretize_state(const UavPosition& pos, std::span<const UavPosition> neighbors,
                          const StateSpace& space) {
  if (!space.area.contains({pos.x, pos.y})) {
    throw std::invalid_argument("UAV position lies outside the area");
  }
  StateKey key;
  key.grid_x = std::min(static_cast<int>(std::floor(pos.x / space.cell_m)), space.nx() - 1);
  key.grid_y = std::min(static_cast<int>(std::floor(pos.y / space.cell_m)), space.ny() - 1);
  key.alt_level = space.altitude_level(pos.h);
  double closest = std::numeric_limits<double>::infinity();
  for (const UavPosition& n : neighbors) closest = std::min(closest, distance(pos, n));
  if (closest < space.near_m) {
    key.neighbor = NeighborBucket::Near;
  } else if (closest < space.mid_m) {
    key.neighbor = NeighborBucket::Mid;
  } else {
    key.neighbor = NeighborBucket::Far;
  }
  return key;
}

MoveResult apply_action(const UavPosition& pos, ActionKind a, const AreaSpec& area,
                        std::span<const double> ladder, double step_m) {
  MoveResult r{pos, false, false};
  UavPosition next = pos;
  switch (a) {
    case ActionKind::Stationary:
      return r;
    case ActionKind::Up:
    case ActionKind::Down: {
      const auto it = std::find_if(ladder.begin(), ladder.end(), [&](double h) {
        return std::abs(h - pos.h) <= kLadderTolerance;
      });
      if (it == ladder.end()) throw std::invalid_argument("UAV altitude is not on the ladder");
      const auto k = it - ladder.begin();
      const auto target = a == ActionKind::Up ? k + 1 : k - 1;
      if (target < 0 || target >= static_cast<std::ptrdiff_t>(ladder.size())) {
        r.boundary_hit = true;
        return r;
      }
      next.h = ladder[static_cast<std::size_t>(target)];
      break;
    }
    case ActionKind::Forward: next.y += step_m; break;
    case ActionKind::Backward: next.y -= step_m; break;
    case ActionKind::Left: next.x -= step_m; break;
    case ActionKind::Right: next.x += step_m; break;
  }
  if (!area.contains({next.x, next.y})) {
    r.boundary_hit = true;
    return r;
  }
  r.position = next;
  r.moved = true;
  return r;
}

ActionKind greedy_action(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return kAllActions[best];
}

ActionKind select_action(const QTable& q, std::size_t state, double epsilon, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<int> pick(0, kActionCount - 1);
    return kAllActions[static_cast<std::size_t>(pick(rng))];
  }
  return greedy_action(q.row(state));
}

double compute_reward(int own_now, int own_prev, double e_now, double e_prev,
                      int locality_now, int locality_prev) {
  const double cooperative = locality_now > locality_prev ? 1.0 : -1.0;
  const double denom = e_now + e_prev;
  const double energy = denom > 0.0 ? (e_prev - e_now) / denom : 0.0;
  return cooperative + energy + static_cast<double>(sign(own_now - own_prev));
}

void q_update(QTable& q, std::size_t state, ActionKind a, double reward,
              std::size_t next_state, const LearnParams& p) {
  const double old = q.value(state, a);
  const double target = reward + p.discount * q.max_value(next_state);
  q.set(state, a, (1.0 - p.learning_rate) * old + p.learning_rate * target);
}

NeighborReport broadcast_and_collect(int self, std::span<const int> scores,
                                     std::span<const UavPosition> positions, double radius,
                                     int bits_per_message) {
  if (self < 0 || static_cast<std::size_t>(self) >= positions.size() ||
      scores.size() != positions.size()) {
    throw std::invalid_argument("broadcast: self must index the position list");
  }
  const auto me = static_cast<std::size_t>(self);
  NeighborReport report;
  report.locality_score = scores[me];
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == me || distance(positions[me], positions[j]) > radius) continue;
    report.neighbor_scores.emplace_back(static_cast<int>(j), scores[j]);
    report.locality_score += scores[j];
  }
  report.messages = static_cast<int>(report.neighbor_scores.size());
  report.cost_bits = report.messages * bits_per_message;
  return report;
}

}  // namespace uavbs
