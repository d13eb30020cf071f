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

#include "uavbs/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavbs {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxRejections = 1000;

double normalize_heading(double heading) {
  double h = std::fmod(heading, kTwoPi);
  if (h < 0.0) h += kTwoPi;
  return h;
}

// Folds a coordinate into [0, limit]; returns true when an odd number of
// reflections happened (the axis velocity component flipped).
bool fold(double& v, double limit) {
  bool flipped = false;
  while (v < 0.0 || v > limit) {
    if (v > limit) {
      v = 2.0 * limit - v;
    } else {
      v = -v;
    }
    flipped = !flipped;
  }
  return flipped;
}

Vec2 sample_position(const AreaSpec& area, const Distribution& distribution,
                     Rng& rng) {
  if (const auto* clustered = std::get_if<ClusteredDistribution>(&distribution)) {
    std::uniform_int_distribution<std::size_t> pick(0, clustered->centers.size() - 1);
    std::normal_distribution<double> offset(0.0, clustered->spread);
    const Vec2 c = clustered->centers[pick(rng)];
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      Vec2 p{c.x + offset(rng), c.y + offset(rng)};
      if (area.contains(p)) return p;
    }
    return c;
  }
  std::uniform_real_distribution<double> ux(0.0, area.width);
  std::uniform_real_distribution<double> uy(0.0, area.height);
  const double x = ux(rng);
  return {x, uy(rng)};
}

}  // namespace

void validate_area(const AreaSpec& area) {
  if (!(area.width > 0.0) || !(area.height > 0.0) || !std::isfinite(area.width) ||
      !std::isfinite(area.height)) {
    throw std::invalid_argument("area dimensions must be positive and finite");
  }
}

void MobilityParams::validate() const {
  if (!(speed_min >= 0.0) || !(speed_max >= speed_min)) {
    throw std::invalid_argument("mobility speed range must satisfy 0 <= speed_min <= speed_max");
  }
  if (epoch_min < 1 || epoch_max < epoch_min) {
    throw std::invalid_argument("mobility epoch range must satisfy 1 <= epoch_min <= epoch_max");
  }
}

std::size_t WorldState::mobile_count() const {
  return static_cast<std::size_t>(std::count_if(
      devices.begin(), devices.end(), [](const GroundDevice& d) { return d.is_mobile(); }));
}

WorldState spawn_devices(const AreaSpec& area, int n_static, int n_mobile,
                         const Distribution& distribution, std::uint64_t seed,
                         const MobilityParams& mobility) {
  validate_area(area);
  mobility.validate();
  if (n_static < 0 || n_mobile < 0) {
    throw std::invalid_argument("device counts must be nonnegative");
  }
  if (const auto* clustered = std::get_if<ClusteredDistribution>(&distribution)) {
    if (clustered->centers.empty()) {
      throw std::invalid_argument("clustered distribution needs at least one center");
    }
    if (!(clustered->spread > 0.0)) {
      throw std::invalid_argument("cluster spread must be positive");
    }
    for (const Vec2& c : clustered->centers) {
      if (!area.contains(c)) {
        throw std::invalid_argument("cluster center (" + std::to_string(c.x) + ", " +
                                    std::to_string(c.y) + ") lies outside the area");
      }
    }
  }

  Rng rng(seed);
  WorldState world;
  world.area = area;
  world.rng_seed = seed;
  world.devices.reserve(static_cast<std::size_t>(n_static + n_mobile));

  std::uniform_real_distribution<double> speed(mobility.speed_min, mobility.speed_max);
  std::uniform_real_distribution<double> heading(0.0, kTwoPi);
  std::uniform_int_distribution<int> epoch(mobility.epoch_min, mobility.epoch_max);

  int next_id = 0;
  for (int i = 0; i < n_static; ++i) {
    world.devices.push_back({next_id++, sample_position(area, distribution, rng), StaticMobility{}});
  }
  for (int i = 0; i < n_mobile; ++i) {
    const Vec2 p = sample_position(area, distribution, rng);
    RandomWalk walk;
    walk.speed = speed(rng);
    walk.heading = heading(rng);
    walk.steps_remaining = epoch(rng);
    world.devices.push_back({next_id++, p, walk});
  }
  return world;
}

std::vector<Vec2> random_cluster_centers(const AreaSpec& area, int count,
                                         double margin, std::uint64_t seed) {
  validate_area(area);
  if (count < 1) throw std::invalid_argument("cluster count must be at least 1");
  const double mx = std::min(margin, area.width / 2.0);
  const double my = std::min(margin, area.height / 2.0);
  Rng rng(seed);
  std::uniform_real_distribution<double> ux(mx, area.width - mx);
  std::uniform_real_distribution<double> uy(my, area.height - my);
  std::vector<Vec2> centers;
  centers.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = ux(rng);
    centers.push_back({x, uy(rng)});
  }
  return centers;
}

void reflect_move(const AreaSpec& area, Vec2& position, double& heading,
                  double distance) {
  if (distance == 0.0) return;
  double x = position.x + distance * std::cos(heading);
  double y = position.y + distance * std::sin(heading);
  const bool flip_x = fold(x, area.width);
  const bool flip_y = fold(y, area.height);
  double h = heading;
  if (flip_x) h = std::numbers::pi - h;
  if (flip_y) h = -h;
  position = {x, y};
  heading = (flip_x || flip_y) ? normalize_heading(h) : heading;
}

WorldState step_mobility(const WorldState& world, Rng& rng,
                         const MobilityParams& mobility) {
  WorldState next = world;
  std::uniform_real_distribution<double> heading(0.0, kTwoPi);
  std::uniform_int_distribution<int> epoch(mobility.epoch_min, mobility.epoch_max);
  for (GroundDevice& device : next.devices) {
    auto* walk = std::get_if<RandomWalk>(&device.mobility);
    if (walk == nullptr) continue;
    if (walk->steps_remaining <= 0) {
      walk->heading = heading(rng);
      walk->steps_remaining = epoch(rng);
    }
    reflect_move(next.area, device.position, walk->heading, walk->speed);
    --walk->steps_remaining;
  }
  return next;
}

}  // namespace uavbs
