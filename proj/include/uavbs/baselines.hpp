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

// Comparison placement strategies.
//
//  * Exhaustive search scores every combination of candidate positions and
//    charges each UAV for physically visiting the positions it tried.
//  * Iterative search is coordinate ascent: UAVs take turns moving to their
//    best neighbouring lattice point while the others hold still. It stands
//    in for centrally planned iterative 3D placement.
//  * Cluster Q-learning partitions devices with k-means at every episode
//    start, sends each UAV to its cluster centroid and learns only the
//    altitude. Each UAV serves only the devices of its own cluster. This is
//    a representative of clustering-based Q-learning deployment, not a
//    reproduction of any specific published variant.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavbs/agent.hpp"
#include "uavbs/config.hpp"
#include "uavbs/energy.hpp"
#include "uavbs/episode.hpp"
#include "uavbs/radio.hpp"
#include "uavbs/world.hpp"

namespace uavbs {

struct PlacementSolution {
  std::vector<UavPosition> positions;
  std::vector<int> per_uav_connected;
  std::vector<double> per_uav_energy_j;
  int total_connected = 0;
  double total_energy_j = 0.0;
  double covered_km2 = 0.0;
  std::uint64_t evaluations = 0;
  int rounds = 0;
  // Iterative search only: total connected after each round.
  std::vector<int> round_totals;
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  explicit SearchBudgetExceeded(std::uint64_t required);
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// Lattice of candidate positions: every multiple of grid_m strictly inside
/// the area, at each listed altitude, sorted lexicographically.
std::vector<UavPosition> make_lattice(const AreaSpec& area, double grid_m,
                                      std::span<const double> altitudes);

/// n choose k, saturating at UINT64_MAX.
std::uint64_t combination_count(std::uint64_t n, std::uint64_t k);

/// Energy to fly `length` meters at the cruise speed of one lattice step per
/// time step.
double flight_energy(double length, double step_m, const PowerModelParams& power);

/// Tries every n_uavs-combination of lattice points (lexicographic order;
/// the first maximum wins). UAV k of the solution is slot k of the
/// combination and is charged for a nearest-neighbour tour from starts[k]
/// (or its first candidate) over all points that slot visits.
PlacementSolution exhaustive_search(const WorldState& world, int n_uavs,
                                    std::span<const UavPosition> lattice,
                                    const ChannelParams& channel,
                                    const PowerModelParams& power, double step_m,
                                    std::uint64_t max_combinations,
                                    std::span<const UavPosition> starts = {});

/// Coordinate ascent from `starts`. Every probed neighbour costs an out-and-
/// back flight; an accepted move costs one more step.
PlacementSolution iterative_search(const WorldState& world,
                                   std::span<const UavPosition> starts,
                                   const ChannelParams& channel,
                                   const PowerModelParams& power,
                                   std::span<const double> ladder, double step_m,
                                   int max_rounds);

struct Clustering {
  std::vector<Vec2> centroids;
  std::vector<int> membership;  // cluster per point
  int reseeds = 0;
};

/// Lloyd's k-means with k-means++ seeding. An empty cluster is re-seeded at
/// a uniformly drawn point.
Clustering kmeans(std::span<const Vec2> points, int k, std::uint64_t seed,
                  int max_iterations);

/// Per-run learning state of the cluster baseline (one altitude table per UAV).
struct ClusterQlState {
  std::vector<QTable> altitude_tables;
};

EpisodeMetrics run_cluster_ql_episode(const ExperimentConfig& cfg, const WorldState& world,
                                      std::uint64_t run_seed, int run, int episode,
                                      ClusterQlState& state);

/// Trains the cluster baseline for cfg.n_episodes on `world` and returns
/// where the UAVs ended the last episode.
PlacementSolution cluster_ql(const ExperimentConfig& cfg, const WorldState& world,
                             std::uint64_t seed);

}  // namespace uavbs
