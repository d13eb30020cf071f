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

// Downlink SINR, device-to-UAV association and coverage scoring.
//
// Received power from UAV j at a ground point i is eta * P * d_ij^-alpha,
// with d_ij the 3D distance. A device is served by the UAV with the highest
// SINR when that SINR reaches the threshold and the UAV still has capacity.
// SINR is strictly increasing in the serving UAV's received power for a
// fixed total, so the best-SINR UAV is the strongest one; this is what the
// kernels compute.

#pragma once

#include <span>
#include <vector>

#include "uavbs/geometry.hpp"
#include "uavbs/world.hpp"

namespace uavbs {

struct ChannelParams {
  double eta = 1.0;
  double alpha = 2.0;
  double noise_w = 1e-9;
  double tx_power_w = 1.0;
  double sinr_threshold = 5.0;  // linear
  int capacity = 150;
  double raster_cell_m = 10.0;
  // When positive, only UAVs within this 3D distance of a device interfere
  // with it. Zero means every other UAV interferes.
  double interference_range_m = 0.0;

  void validate() const;
  double eta_p() const { return eta * tx_power_w; }
};

inline constexpr int kUnassociated = -1;

struct AssociationResult {
  std::vector<int> device_ids;
  std::vector<int> assignment;  // per device slot: UAV index or kUnassociated
  std::vector<double> sinr;     // best-server SINR per device slot
  std::vector<int> per_uav_score;

  int total_connected() const;
  /// Connection indicator w(i) for device slot i and UAV j.
  bool connected(std::size_t device_slot, int uav) const {
    return assignment[device_slot] == uav;
  }
  friend bool operator==(const AssociationResult&, const AssociationResult&) = default;
};

/// Structure-of-arrays copy of ground coordinates, the kernels' input layout.
struct PointSet {
  std::vector<double> xs;
  std::vector<double> ys;

  static PointSet from(const WorldState& world);
  static PointSet from(std::span<const Vec2> points);
  std::size_t size() const { return xs.size(); }
};

/// Received-power row of one UAV over a point set, plus the matching
/// interference row (identical unless an interference range is set).
struct LinkRows {
  std::vector<double> signal;
  std::vector<double> interference;

  const double* interference_data() const {
    return interference.empty() ? signal.data() : interference.data();
  }
};

double distance3d(Vec2 device, const UavPosition& uav);

double received_power(Vec2 device, const UavPosition& uav, const ChannelParams& params);

/// SINR of `serving` at `device` with every UAV in `interferers` interfering.
/// Throws std::domain_error when the device sits exactly at the serving UAV.
double sinr(Vec2 device, const UavPosition& serving,
            std::span<const UavPosition> interferers, const ChannelParams& params);

LinkRows link_rows(const PointSet& points, const UavPosition& uav,
                   const ChannelParams& params);

AssociationResult associate(const WorldState& world, std::span<const UavPosition> uavs,
                            const ChannelParams& params);

/// Association where device slot i may only be served by UAV `partition[i]`
/// (or by nobody when that entry is kUnassociated). All other UAVs still
/// interfere. Used by the cluster-partitioned baseline.
AssociationResult associate_partitioned(const WorldState& world,
                                        std::span<const UavPosition> uavs,
                                        std::span<const int> partition,
                                        const ChannelParams& params);

int connection_score(const AssociationResult& result, int uav);

/// Total admitted under the per-UAV cap given per-UAV demand counts.
/// Admission never falls back to a second-best UAV, so this is exact.
int capacity_limited_total(std::span<const int> demand, int capacity);

/// Served demand for UAVs given their precomputed rows; demand is written
/// into `counts` (size = rows.size()) before the capacity limit is applied.
void served_demand(std::span<const LinkRows* const> rows, std::size_t n_points,
                   const ChannelParams& params, std::span<int> counts);

/// Covered ground area in km^2, probing the centre of every cell x cell
/// raster square (edge squares are clipped to the area and weighted by
/// their clipped size).
double covered_area(std::span<const UavPosition> uavs, const ChannelParams& params,
                    const AreaSpec& area, double cell);

}  // namespace uavbs
