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

// Service area, ground-device population and device mobility.
//
// Devices are either static or follow a random-walk mobility model: each
// mobile device travels at a fixed speed along a heading that is redrawn
// uniformly at the end of every epoch. Devices bounce off the area walls.

#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "uavbs/geometry.hpp"

namespace uavbs {

using Rng = std::mt19937_64;

struct StaticMobility {
  friend bool operator==(const StaticMobility&, const StaticMobility&) = default;
};

struct RandomWalk {
  double speed = 0.0;    // meters per step
  double heading = 0.0;  // radians, 0 = +x
  int steps_remaining = 0;

  friend bool operator==(const RandomWalk&, const RandomWalk&) = default;
};

using Mobility = std::variant<StaticMobility, RandomWalk>;

struct GroundDevice {
  int id = 0;
  Vec2 position;
  Mobility mobility;

  bool is_mobile() const { return std::holds_alternative<RandomWalk>(mobility); }
  friend bool operator==(const GroundDevice&, const GroundDevice&) = default;
};

struct UniformDistribution {};

/// Mixture of isotropic Gaussian blobs, truncated to the area by rejection.
struct ClusteredDistribution {
  std::vector<Vec2> centers;
  double spread = 80.0;  // standard deviation, meters
};

using Distribution = std::variant<UniformDistribution, ClusteredDistribution>;

struct MobilityParams {
  double speed_min = 0.5;
  double speed_max = 1.5;
  int epoch_min = 10;
  int epoch_max = 50;

  void validate() const;
};

struct WorldState {
  AreaSpec area;
  std::vector<GroundDevice> devices;
  std::uint64_t rng_seed = 0;

  std::size_t mobile_count() const;
};

WorldState spawn_devices(const AreaSpec& area, int n_static, int n_mobile,
                         const Distribution& distribution, std::uint64_t seed,
                         const MobilityParams& mobility = {});

/// Draws `count` cluster centers uniformly inside the area, keeping a margin
/// of `margin` meters from the walls.
std::vector<Vec2> random_cluster_centers(const AreaSpec& area, int count,
                                         double margin, std::uint64_t seed);

WorldState step_mobility(const WorldState& world, Rng& rng,
                         const MobilityParams& mobility = {});

/// Advances a single point along `heading` for `distance` meters, folding
/// any wall crossing back into the area and reflecting the heading.
void reflect_move(const AreaSpec& area, Vec2& position, double& heading,
                  double distance);

void validate_area(const AreaSpec& area);

}  // namespace uavbs
