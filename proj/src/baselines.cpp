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

#include "uavbs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uavbs/kernels/kernels.hpp"

namespace uavbs {
namespace {

double tour_length(const UavPosition* start, std::vector<UavPosition> stops) {
  if (stops.empty()) return 0.0;
  double length = 0.0;
  UavPosition at = start != nullptr ? *start : stops.front();
  std::vector<bool> seen(stops.size(), false);
  for (std::size_t visited = 0; visited < stops.size(); ++visited) {
    std::size_t next = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < stops.size(); ++k) {
      if (seen[k]) continue;
      const double d = distance(at, stops[k]);
      if (d < best) {
        best = d;
        next = k;
      }
    }
    seen[next] = true;
    length += best;
    at = stops[next];
  }
  return length;
}

void fill_from_association(PlacementSolution& s, const WorldState& world,
                           const ChannelParams& channel) {
  const AssociationResult a = associate(world, s.positions, channel);
  s.per_uav_connected = a.per_uav_score;
  s.total_connected = a.total_connected();
  s.covered_km2 = covered_area(s.positions, channel, world.area, channel.raster_cell_m);
  s.total_energy_j =
      std::accumulate(s.per_uav_energy_j.begin(), s.per_uav_energy_j.end(), 0.0);
}

// Cached received-power rows for evaluating many placements on one world.
class PlacementScorer {
 public:
  PlacementScorer(const WorldState& world, const ChannelParams& channel)
      : points_(PointSet::from(world)), channel_(channel) {}

  LinkRows rows(const UavPosition& p) const { return link_rows(points_, p, channel_); }

  int total(std::span<const LinkRows* const> rows) {
    counts_.assign(rows.size(), 0);
    served_demand(rows, points_.size(), channel_, counts_);
    return capacity_limited_total(counts_, channel_.capacity);
  }

 private:
  PointSet points_;
  const ChannelParams& channel_;
  std::vector<int> counts_;
};

std::vector<int> assign_clusters(std::span<const UavPosition> starts,
                                 std::span<const Vec2> centroids) {
  const std::size_t n = starts.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto cost = [&](const std::vector<int>& p) {
    double c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2 t = centroids[static_cast<std::size_t>(p[j])];
      c += std::hypot(starts[j].x - t.x, starts[j].y - t.y);
    }
    return c;
  };
  if (n <= 8) {
    std::vector<int> best = perm;
    double best_cost = cost(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double c = cost(perm);
      if (c < best_cost) {
        best_cost = c;
        best = perm;
      }
    }
    return best;
  }
  // Greedy matching for large fleets.
  std::vector<bool> taken(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (taken[k]) continue;
      const double d = std::hypot(starts[j].x - centroids[k].x, starts[j].y - centroids[k].y);
      if (d < best) {
        best = d;
        pick = k;
      }
    }
    taken[pick] = true;
    perm[j] = static_cast<int>(pick);
  }
  return perm;
}

double snap_axis(double start, double target, double step, double limit) {
  double v = start + std::round((target - start) / step) * step;
  while (v > limit) v -= step;
  while (v < 0.0) v += step;
  return v;
}

ActionKind toward(const UavPosition& at, const UavPosition& target) {
  const double dx = target.x - at.x;
  const double dy = target.y - at.y;
  if (std::abs(dx) >= std::abs(dy)) return dx > 0.0 ? ActionKind::Right : ActionKind::Left;
  return dy > 0.0 ? ActionKind::Forward : ActionKind::Backward;
}

constexpr std::array<ActionKind, 3> kAltitudeActions = {ActionKind::Up, ActionKind::Down,
                                                        ActionKind::Stationary};

ActionKind select_altitude_action(const QTable& q, std::size_t state, double epsilon,
                                  Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, kAltitudeActions.size() - 1);
    return kAltitudeActions[pick(rng)];
  }
  ActionKind best = kAltitudeActions[0];
  for (ActionKind a : kAltitudeActions) {
    if (q.value(state, a) > q.value(state, best)) best = a;
  }
  return best;
}

}  // namespace

SearchBudgetExceeded::SearchBudgetExceeded(std::uint64_t required)
    : std::runtime_error("exhaustive search needs " + std::to_string(required) +
                         " combinations, above the configured budget; shrink the lattice"),
      required_(required) {}

std::vector<UavPosition> make_lattice(const AreaSpec& area, double grid_m,
                                      std::span<const double> altitudes) {
  if (!(grid_m > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
  std::vector<UavPosition> out;
  for (int i = 1; static_cast<double>(i) * grid_m < area.width; ++i) {
    for (int j = 1; static_cast<double>(j) * grid_m < area.height; ++j) {
      for (double h : altitudes) {
        out.push_back({static_cast<double>(i) * grid_m, static_cast<double>(j) * grid_m, h});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t combination_count(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(c);
}

double flight_energy(double length, double step_m, const PowerModelParams& power) {
  if (length <= 0.0) return 0.0;
  const double v = step_m / power.dt;
  return propulsion_power(v, power) * (length / v);
}

PlacementSolution exhaustive_search(const WorldState& world, int n_uavs,
                                    std::span<const UavPosition> lattice,
                                    const ChannelParams& channel,
                                    const PowerModelParams& power, double step_m,
                                    std::uint64_t max_combinations,
                                    std::span<const UavPosition> starts) {
  if (n_uavs < 1) throw std::invalid_argument("exhaustive search needs at least one UAV");
  if (lattice.empty()) throw std::invalid_argument("exhaustive search needs a nonempty lattice");
  const auto n = static_cast<std::size_t>(n_uavs);
  if (n > lattice.size()) {
    throw std::invalid_argument("more UAVs than lattice points");
  }
  const std::uint64_t required = combination_count(lattice.size(), n);
  if (required > max_combinations) throw SearchBudgetExceeded(required);

  std::vector<UavPosition> sorted(lattice.begin(), lattice.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t L = sorted.size();

  const PointSet points = PointSet::from(world);
  std::vector<LinkRows> rows;
  rows.reserve(L);
  for (const UavPosition& p : sorted) rows.push_back(link_rows(points, p, channel));
  std::vector<const double*> sig(L);
  std::vector<const double*> itf(L);
  for (std::size_t k = 0; k < L; ++k) {
    sig[k] = rows[k].signal.data();
    itf[k] = rows[k].interference_data();
  }

  // Enumerate in lexicographic order. The first n - 1 slots form a prefix
  // whose partial best-server state is computed once; only the last slot
  // varies in the inner loop.
  const kernels::KernelSet& kern = kernels::active();
  const std::size_t np = points.size();
  const std::size_t k_pre = n - 1;
  std::vector<double> top(np), top_idx(np), excl(np), all(np);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<const double*> pre_sig(k_pre);
  std::vector<const double*> pre_itf(k_pre);
  std::vector<int> counts(n);
  std::vector<std::size_t> best_idx = idx;
  int best_total = -1;
  std::uint64_t evaluations = 0;

  while (true) {
    for (std::size_t k = 0; k < k_pre; ++k) {
      pre_sig[k] = sig[idx[k]];
      pre_itf[k] = itf[idx[k]];
    }
    kern.served_prefix(pre_sig.data(), pre_itf.data(), k_pre, np, top.data(), top_idx.data(),
                       excl.data(), all.data());
    const std::size_t first = k_pre == 0 ? 0 : idx[k_pre - 1] + 1;
    for (std::size_t last = first; last < L; ++last) {
      std::fill(counts.begin(), counts.end(), 0);
      kern.count_served_last(top.data(), top_idx.data(), excl.data(), all.data(), sig[last],
                             itf[last], k_pre, np, channel.noise_w, channel.sinr_threshold,
                             counts.data());
      const int total = capacity_limited_total(counts, channel.capacity);
      ++evaluations;
      if (total > best_total) {
        best_total = total;
        best_idx = idx;
        best_idx[k_pre] = last;
      }
    }
    // Next prefix in lexicographic order.
    std::size_t k = k_pre;
    while (k > 0 && idx[k - 1] == L - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t m = k; m < k_pre; ++m) idx[m] = idx[m - 1] + 1;
  }

  PlacementSolution s;
  s.evaluations = evaluations;
  for (std::size_t k = 0; k < n; ++k) s.positions.push_back(sorted[best_idx[k]]);
  // Slot k takes every lattice index in [k, L - n + k] at some point.
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<UavPosition> visited(sorted.begin() + static_cast<std::ptrdiff_t>(k),
                                     sorted.begin() + static_cast<std::ptrdiff_t>(L - n + k + 1));
    const UavPosition* from = k < starts.size() ? &starts[k] : nullptr;
    s.per_uav_energy_j.push_back(flight_energy(tour_length(from, std::move(visited)), step_m, power));
  }
  fill_from_association(s, world, channel);
  return s;
}

PlacementSolution iterative_search(const WorldState& world,
                                   std::span<const UavPosition> starts,
                                   const ChannelParams& channel,
                                   const PowerModelParams& power,
                                   std::span<const double> ladder, double step_m,
                                   int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("iterative search needs max_rounds >= 1");
  if (starts.empty()) throw std::invalid_argument("iterative search needs at least one UAV");
  const std::size_t n = starts.size();
  PlacementScorer scorer(world, channel);
  std::vector<UavPosition> pos(starts.begin(), starts.end());
  std::vector<LinkRows> rows;
  rows.reserve(n);
  for (const UavPosition& p : pos) rows.push_back(scorer.rows(p));
  std::vector<const LinkRows*> view(n);
  for (std::size_t j = 0; j < n; ++j) view[j] = &rows[j];

  const double hop_energy = propulsion_power(step_m / power.dt, power) * power.dt;
  std::vector<double> energy(n, 0.0);
  PlacementSolution s;
  int total = scorer.total(view);
  ++s.evaluations;

  for (int round = 0; round < max_rounds; ++round) {
    bool improved = false;
    for (std::size_t j = 0; j < n; ++j) {
      int best_total = total;
      UavPosition best_pos = pos[j];
      LinkRows best_rows;
      for (ActionKind a : kAllActions) {
        if (a == ActionKind::Stationary) continue;
        const MoveResult m = apply_action(pos[j], a, world.area, ladder, step_m);
        if (!m.moved) continue;
        energy[j] += 2.0 * hop_energy;
        LinkRows cand = scorer.rows(m.position);
        view[j] = &cand;
        const int t = scorer.total(view);
        ++s.evaluations;
        if (t > best_total) {
          best_total = t;
          best_pos = m.position;
          best_rows = std::move(cand);
        }
        view[j] = &rows[j];
      }
      if (best_total > total) {
        pos[j] = best_pos;
        rows[j] = std::move(best_rows);
        view[j] = &rows[j];
        total = best_total;
        energy[j] += hop_energy;
        improved = true;
      }
    }
    ++s.rounds;
    s.round_totals.push_back(total);
    if (!improved) break;
  }

  s.positions = pos;
  s.per_uav_energy_j = energy;
  fill_from_association(s, world, channel);
  return s;
}

Clustering kmeans(std::span<const Vec2> points, int k, std::uint64_t seed,
                  int max_iterations) {
  if (k < 1) throw std::invalid_argument("k-means needs k >= 1");
  if (points.empty()) throw std::invalid_argument("k-means needs at least one point");
  const auto kk = static_cast<std::size_t>(k);
  Rng rng(seed);
  Clustering c;
  auto d2 = [](Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
  };

  std::uniform_int_distribution<std::size_t> any(0, points.size() - 1);
  c.centroids.push_back(points[any(rng)]);
  std::vector<double> nearest(points.size());
  while (c.centroids.size() < kk) {
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double m = std::numeric_limits<double>::infinity();
      for (const Vec2& ctr : c.centroids) m = std::min(m, d2(points[i], ctr));
      nearest[i] = m;
      sum += m;
    }
    if (sum <= 0.0) {
      c.centroids.push_back(points[any(rng)]);
      continue;
    }
    std::discrete_distribution<std::size_t> pick(nearest.begin(), nearest.end());
    c.centroids.push_back(points[pick(rng)]);
  }

  c.membership.assign(points.size(), -1);
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      int best = 0;
      double bd = d2(points[i], c.centroids[0]);
      for (std::size_t j = 1; j < kk; ++j) {
        const double d = d2(points[i], c.centroids[j]);
        if (d < bd) {
          bd = d;
          best = static_cast<int>(j);
        }
      }
      if (c.membership[i] != best) {
        c.membership[i] = best;
        changed = true;
      }
    }
    std::vector<Vec2> sums(kk);
    std::vector<int> sizes(kk, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto j = static_cast<std::size_t>(c.membership[i]);
      sums[j].x += points[i].x;
      sums[j].y += points[i].y;
      ++sizes[j];
    }
    for (std::size_t j = 0; j < kk; ++j) {
      if (sizes[j] == 0) {
        c.centroids[j] = points[any(rng)];
        ++c.reseeds;
        changed = true;
        continue;
      }
      c.centroids[j] = {sums[j].x / sizes[j], sums[j].y / sizes[j]};
    }
    if (!changed) break;
  }
  return c;
}

EpisodeMetrics run_cluster_ql_episode(const ExperimentConfig& cfg, const WorldState& world0,
                                      std::uint64_t run_seed, int run, int episode,
                                      ClusterQlState& state) {
  const auto n = static_cast<std::size_t>(cfg.n_uavs);
  const StateSpace space = cfg.state_space();
  const auto& ladder = cfg.learning.altitudes;
  if (state.altitude_tables.size() != n) {
    state.altitude_tables.assign(n, QTable(ladder.size()));
  }

  EpisodeMetrics m;
  m.run = run;
  m.episode = episode;
  m.agents.assign(n, {});
  m.n_devices = static_cast<int>(world0.devices.size());
  const int max_step = cfg.learning.learn.max_step;
  if (max_step == 0) return m;

  std::vector<UavPosition> pos = cfg.starts();
  // Controller snapshot: cluster the devices where they are right now.
  std::vector<UavPosition> targets = pos;
  std::vector<int> partition(world0.devices.size(), kUnassociated);
  if (!world0.devices.empty()) {
    std::vector<Vec2> where;
    where.reserve(world0.devices.size());
    for (const GroundDevice& d : world0.devices) where.push_back(d.position);
    const Clustering clusters =
        kmeans(where, cfg.n_uavs, run_seed, cfg.cluster_ql.kmeans_iterations);
    const std::vector<int> owner_of = assign_clusters(pos, clusters.centroids);
    std::vector<int> uav_of_cluster(n);
    for (std::size_t j = 0; j < n; ++j) {
      uav_of_cluster[static_cast<std::size_t>(owner_of[j])] = static_cast<int>(j);
      const Vec2 c = clusters.centroids[static_cast<std::size_t>(owner_of[j])];
      targets[j].x = snap_axis(pos[j].x, c.x, cfg.learning.step_m, world0.area.width);
      targets[j].y = snap_axis(pos[j].y, c.y, cfg.learning.step_m, world0.area.height);
    }
    for (std::size_t i = 0; i < partition.size(); ++i) {
      partition[i] = uav_of_cluster[static_cast<std::size_t>(clusters.membership[i])];
    }
  }

  Rng mobility_rng = make_rng(run_seed, episode, 1);
  Rng action_rng = make_rng(run_seed, episode, 3);
  const double epsilon = cfg.learning.learn.epsilon_for_episode(episode);
  std::vector<EnergyLedger> ledgers(n, EnergyLedger(cfg.energy.dt));
  GoalTracker goal(cfg.learning.rules, m.n_devices, cfg.n_uavs, cfg.channel.capacity);
  WorldState world = world0;
  const bool dynamic = world.mobile_count() > 0;

  std::vector<int> prev_score(n, 0);
  std::vector<double> prev_energy(n, 0.0);
  std::vector<ActionKind> action(n);
  std::vector<bool> learning(n);
  std::vector<std::size_t> alt_state(n);
  AssociationResult assoc;

  for (int t = 1; t <= max_step; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      alt_state[j] = static_cast<std::size_t>(space.altitude_level(pos[j].h));
      learning[j] = pos[j].x == targets[j].x && pos[j].y == targets[j].y;
      action[j] = learning[j] ? select_altitude_action(state.altitude_tables[j], alt_state[j],
                                                       epsilon, action_rng)
                              : toward(pos[j], targets[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const MoveResult mv = apply_action(pos[j], action[j], world.area, ladder, cfg.learning.step_m);
      pos[j] = mv.position;
      ledgers[j].add_power(propulsion_power(
          step_speed(mv.moved, cfg.learning.step_m, cfg.energy.dt), cfg.energy));
    }
    if (dynamic) world = step_mobility(world, mobility_rng, cfg.scenario.mobility);
    assoc = associate_partitioned(world, pos, partition, cfg.channel);

    for (std::size_t j = 0; j < n; ++j) {
      const int now = assoc.per_uav_score[j];
      const double e_now = ledgers[j].average_step_j();
      if (t == 1) {
        prev_score[j] = now;
        prev_energy[j] = e_now;
      }
      const double r = compute_reward(now, prev_score[j], e_now, prev_energy[j], now, prev_score[j]);
      m.agents[j].reward += r;
      if (learning[j]) {
        const auto next = static_cast<std::size_t>(space.altitude_level(pos[j].h));
        q_update(state.altitude_tables[j], alt_state[j], action[j], r, next, cfg.learning.learn);
      }
      prev_score[j] = now;
      prev_energy[j] = e_now;
    }
    m.steps = t;
    if (battery_depleted(cfg.learning.rules, ledgers)) {
      m.cause = Termination::Dead;
      break;
    }
    if (goal.observe(assoc.total_connected())) {
      m.cause = Termination::Goal;
      break;
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    m.agents[j].energy_j = total_energy(ledgers[j]);
    m.agents[j].connected = assoc.per_uav_score[j];
  }
  finalize_totals(m);
  m.covered_km2 = covered_area(pos, cfg.channel, world.area, cfg.channel.raster_cell_m);
  return m;
}

PlacementSolution cluster_ql(const ExperimentConfig& cfg, const WorldState& world,
                             std::uint64_t seed) {
  ClusterQlState state;
  EpisodeMetrics last;
  for (int e = 0; e < cfg.n_episodes; ++e) {
    last = run_cluster_ql_episode(cfg, world, seed, 0, e, state);
  }
  PlacementSolution s;
  for (const AgentMetrics& a : last.agents) {
    s.per_uav_connected.push_back(a.connected);
    s.per_uav_energy_j.push_back(a.energy_j);
  }
  s.total_connected = last.total_connected;
  s.total_energy_j = last.total_energy_j;
  s.covered_km2 = last.covered_km2;
  s.rounds = cfg.n_episodes;
  return s;
}

}  // namespace uavbs
