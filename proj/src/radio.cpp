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

#include "uavbs/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uavbs/kernels/kernels.hpp"

namespace uavbs {
namespace {

std::vector<const double*> signal_ptrs(std::span<const LinkRows> rows) {
  std::vector<const double*> out;
  out.reserve(rows.size());
  for (const LinkRows& r : rows) out.push_back(r.signal.data());
  return out;
}

std::vector<const double*> interference_ptrs(std::span<const LinkRows> rows) {
  std::vector<const double*> out;
  out.reserve(rows.size());
  for (const LinkRows& r : rows) out.push_back(r.interference_data());
  return out;
}

void check_uavs(std::span<const UavPosition> uavs) {
  for (const UavPosition& u : uavs) {
    if (!(u.h > 0.0)) throw std::invalid_argument("UAV altitude must be positive");
  }
}

// Admits each UAV's candidates in descending SINR order up to capacity.
void admit(AssociationResult& result, std::size_t n_uav, int capacity) {
  std::vector<std::vector<std::size_t>> queues(n_uav);
  for (std::size_t i = 0; i < result.assignment.size(); ++i) {
    const int j = result.assignment[i];
    if (j != kUnassociated) queues[static_cast<std::size_t>(j)].push_back(i);
  }
  result.per_uav_score.assign(n_uav, 0);
  for (std::size_t j = 0; j < n_uav; ++j) {
    auto& q = queues[j];
    const auto cap = static_cast<std::size_t>(capacity);
    if (q.size() > cap) {
      std::stable_sort(q.begin(), q.end(), [&](std::size_t a, std::size_t b) {
        return result.sinr[a] > result.sinr[b];
      });
      for (std::size_t k = cap; k < q.size(); ++k) result.assignment[q[k]] = kUnassociated;
      q.resize(cap);
    }
    result.per_uav_score[j] = static_cast<int>(q.size());
  }
}

}  // namespace

void ChannelParams::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("channel.eta must be positive");
  if (!(alpha >= 2.0)) throw std::invalid_argument("channel.alpha must be >= 2");
  if (!(noise_w > 0.0)) throw std::invalid_argument("channel.noise_w must be positive");
  if (!(tx_power_w > 0.0)) throw std::invalid_argument("channel.tx_power_w must be positive");
  if (!(sinr_threshold > 0.0)) {
    throw std::invalid_argument("channel.sinr_threshold must be positive");
  }
  if (capacity < 1) throw std::invalid_argument("channel.capacity must be >= 1");
  if (!(raster_cell_m > 0.0)) throw std::invalid_argument("channel.raster_cell_m must be positive");
  if (!(interference_range_m >= 0.0)) {
    throw std::invalid_argument("channel.interference_range_m must be >= 0");
  }
}

int AssociationResult::total_connected() const {
  return std::accumulate(per_uav_score.begin(), per_uav_score.end(), 0);
}

PointSet PointSet::from(const WorldState& world) {
  PointSet p;
  p.xs.reserve(world.devices.size());
  p.ys.reserve(world.devices.size());
  for (const GroundDevice& d : world.devices) {
    p.xs.push_back(d.position.x);
    p.ys.push_back(d.position.y);
  }
  return p;
}

PointSet PointSet::from(std::span<const Vec2> points) {
  PointSet p;
  p.xs.reserve(points.size());
  p.ys.reserve(points.size());
  for (const Vec2& v : points) {
    p.xs.push_back(v.x);
    p.ys.push_back(v.y);
  }
  return p;
}

double distance3d(Vec2 device, const UavPosition& uav) {
  const double dx = device.x - uav.x;
  const double dy = device.y - uav.y;
  return std::sqrt(dx * dx + dy * dy + uav.h * uav.h);
}

double received_power(Vec2 device, const UavPosition& uav, const ChannelParams& params) {
  double out = 0.0;
  kernels::scalar().received_power(&device.x, &device.y, 1, uav.x, uav.y, uav.h,
                                   params.eta_p(), params.alpha, &out);
  return out;
}

double sinr(Vec2 device, const UavPosition& serving,
            std::span<const UavPosition> interferers, const ChannelParams& params) {
  if (distance3d(device, serving) == 0.0) {
    throw std::domain_error("device coincides with its serving UAV (zero distance)");
  }
  const double signal = received_power(device, serving, params);
  double interference = 0.0;
  for (const UavPosition& z : interferers) interference += received_power(device, z, params);
  return signal / (interference + params.noise_w);
}

LinkRows link_rows(const PointSet& points, const UavPosition& uav,
                   const ChannelParams& params) {
  LinkRows rows;
  rows.signal.resize(points.size());
  kernels::active().received_power(points.xs.data(), points.ys.data(), points.size(), uav.x,
                                    uav.y, uav.h, params.eta_p(), params.alpha,
                                    rows.signal.data());
  if (params.interference_range_m > 0.0) {
    const double r2 = params.interference_range_m * params.interference_range_m;
    rows.interference = rows.signal;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double dx = points.xs[i] - uav.x;
      const double dy = points.ys[i] - uav.y;
      if ((dx * dx + dy * dy) + uav.h * uav.h > r2) rows.interference[i] = 0.0;
    }
  }
  return rows;
}

AssociationResult associate(const WorldState& world, std::span<const UavPosition> uavs,
                            const ChannelParams& params) {
  if (uavs.empty()) throw std::invalid_argument("association needs at least one UAV");
  check_uavs(uavs);
  const PointSet points = PointSet::from(world);
  const std::size_t n = points.size();

  std::vector<LinkRows> rows;
  rows.reserve(uavs.size());
  for (const UavPosition& u : uavs) rows.push_back(link_rows(points, u, params));
  const auto sig = signal_ptrs(rows);
  const auto itf = interference_ptrs(rows);

  AssociationResult result;
  result.device_ids.reserve(n);
  for (const GroundDevice& d : world.devices) result.device_ids.push_back(d.id);
  result.assignment.assign(n, kUnassociated);
  result.sinr.assign(n, 0.0);
  kernels::active().best_server(sig.data(), itf.data(), uavs.size(), n, params.noise_w,
                                result.assignment.data(), result.sinr.data());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(result.sinr[i] >= params.sinr_threshold)) result.assignment[i] = kUnassociated;
  }
  admit(result, uavs.size(), params.capacity);
  return result;
}

AssociationResult associate_partitioned(const WorldState& world,
                                        std::span<const UavPosition> uavs,
                                        std::span<const int> partition,
                                        const ChannelParams& params) {
  if (uavs.empty()) throw std::invalid_argument("association needs at least one UAV");
  if (partition.size() != world.devices.size()) {
    throw std::invalid_argument("partition must have one entry per device");
  }
  check_uavs(uavs);
  const PointSet points = PointSet::from(world);
  const std::size_t n = points.size();
  std::vector<LinkRows> rows;
  rows.reserve(uavs.size());
  for (const UavPosition& u : uavs) rows.push_back(link_rows(points, u, params));

  AssociationResult result;
  result.device_ids.reserve(n);
  for (const GroundDevice& d : world.devices) result.device_ids.push_back(d.id);
  result.assignment.assign(n, kUnassociated);
  result.sinr.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int owner = partition[i];
    if (owner == kUnassociated) continue;
    if (owner < 0 || static_cast<std::size_t>(owner) >= uavs.size()) {
      throw std::invalid_argument("partition entry names an unknown UAV");
    }
    const auto a = static_cast<std::size_t>(owner);
    double interf = 0.0;
    for (std::size_t z = 0; z < rows.size(); ++z) {
      if (z != a) interf += rows[z].interference_data()[i];
    }
    result.sinr[i] = rows[a].signal[i] / (interf + params.noise_w);
    if (result.sinr[i] >= params.sinr_threshold) result.assignment[i] = owner;
  }
  admit(result, uavs.size(), params.capacity);
  return result;
}

int connection_score(const AssociationResult& result, int uav) {
  if (uav < 0 || static_cast<std::size_t>(uav) >= result.per_uav_score.size()) return 0;
  return result.per_uav_score[static_cast<std::size_t>(uav)];
}

int capacity_limited_total(std::span<const int> demand, int capacity) {
  int total = 0;
  for (int d : demand) total += std::min(d, capacity);
  return total;
}

void served_demand(std::span<const LinkRows* const> rows, std::size_t n_points,
                   const ChannelParams& params, std::span<int> counts) {
  std::fill(counts.begin(), counts.end(), 0);
  if (rows.empty()) return;
  std::vector<const double*> sig;
  std::vector<const double*> itf;
  sig.reserve(rows.size());
  itf.reserve(rows.size());
  for (const LinkRows* r : rows) {
    sig.push_back(r->signal.data());
    itf.push_back(r->interference_data());
  }
  kernels::active().count_served(sig.data(), itf.data(), rows.size(), n_points,
                                 params.noise_w, params.sinr_threshold, counts.data());
}

double covered_area(std::span<const UavPosition> uavs, const ChannelParams& params,
                    const AreaSpec& area, double cell) {
  if (!(cell > 0.0)) throw std::invalid_argument("raster cell must be positive");
  validate_area(area);
  if (uavs.empty()) return 0.0;
  check_uavs(uavs);

  const auto nx = static_cast<std::size_t>(std::ceil(area.width / cell));
  const auto ny = static_cast<std::size_t>(std::ceil(area.height / cell));
  std::vector<Vec2> probes;
  std::vector<double> weights;
  probes.reserve(nx * ny);
  weights.reserve(nx * ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double x0 = static_cast<double>(ix) * cell;
    const double x1 = std::min(x0 + cell, area.width);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double y0 = static_cast<double>(iy) * cell;
      const double y1 = std::min(y0 + cell, area.height);
      probes.push_back({0.5 * (x0 + x1), 0.5 * (y0 + y1)});
      weights.push_back((x1 - x0) * (y1 - y0));
    }
  }
  const PointSet points = PointSet::from(probes);
  std::vector<LinkRows> rows;
  rows.reserve(uavs.size());
  for (const UavPosition& u : uavs) rows.push_back(link_rows(points, u, params));
  const auto sig = signal_ptrs(rows);
  const auto itf = interference_ptrs(rows);

  std::vector<int> best(points.size());
  std::vector<double> s(points.size());
  kernels::active().best_server(sig.data(), itf.data(), uavs.size(), points.size(),
                                params.noise_w, best.data(), s.data());
  double covered = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (s[k] >= params.sinr_threshold) covered += weights[k];
  }
  return covered / 1e6;
}

}  // namespace uavbs
