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

#include "uavbs/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "uavbs/radio.hpp"

namespace uavbs {
namespace {

std::uint64_t run_seed_of(const ExperimentConfig& cfg, int run) {
  return cfg.base_seed + static_cast<std::uint64_t>(run);
}

EpisodeMetrics placement_row(const PlacementSolution& s, int run, int n_devices) {
  EpisodeMetrics m;
  m.run = run;
  m.episode = 0;
  for (std::size_t j = 0; j < s.positions.size(); ++j) {
    m.agents.push_back({0.0, s.per_uav_energy_j[j], s.per_uav_connected[j]});
  }
  m.n_devices = n_devices;
  finalize_totals(m);
  m.covered_km2 = s.covered_km2;
  return m;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory " + path.parent_path().string() +
                               ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing: " +
                             std::strerror(errno));
  }
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

double printed(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

}  // namespace

WorldState scenario_world(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  const ScenarioConfig& sc = cfg.scenario;
  Distribution dist = UniformDistribution{};
  if (sc.distribution == DistributionKind::Clustered) {
    ClusteredDistribution cd;
    cd.spread = sc.cluster_spread_m;
    cd.centers = sc.cluster_centers;
    if (cd.centers.empty()) {
      int count = sc.cluster_count;
      if (count == 0) {
        Rng pick = make_rng(run_seed, -1, 7);
        count = std::uniform_int_distribution<int>(2, 4)(pick);
      }
      cd.centers = random_cluster_centers(sc.area, count, 2.0 * sc.cluster_spread_m,
                                          run_seed ^ 0x9e3779b97f4a7c15ULL);
    }
    dist = cd;
  }
  return spawn_devices(sc.area, sc.n_static, sc.n_mobile, dist, run_seed, sc.mobility);
}

EpisodeMetrics run_episode(const ExperimentConfig& cfg, const WorldState& world0,
                           std::uint64_t run_seed, int run, int episode, RunState& state) {
  const auto n = static_cast<std::size_t>(cfg.n_uavs);
  const StateSpace space = cfg.state_space();
  const LearningConfig& lc = cfg.learning;
  if (state.tables.size() != n) state.tables.assign(n, QTable(space.size()));

  EpisodeMetrics m;
  m.run = run;
  m.episode = episode;
  m.agents.assign(n, {});
  m.n_devices = static_cast<int>(world0.devices.size());
  if (lc.learn.max_step == 0) return m;

  std::vector<UavPosition> pos = cfg.starts();
  Rng mobility_rng = make_rng(run_seed, episode, 1);
  Rng action_rng = make_rng(run_seed, episode, 2);
  const double epsilon = lc.learn.epsilon_for_episode(episode);
  std::vector<EnergyLedger> ledgers(n, EnergyLedger(cfg.energy.dt));
  GoalTracker goal(lc.rules, m.n_devices, cfg.n_uavs, cfg.channel.capacity);
  WorldState world = world0;
  const bool dynamic = world.mobile_count() > 0;

  std::vector<int> prev_own(n, 0);
  std::vector<int> prev_loc(n, 0);
  std::vector<double> prev_e(n, 0.0);
  std::vector<std::size_t> s(n);
  std::vector<ActionKind> a(n);
  std::vector<UavPosition> others;
  others.reserve(n);
  auto state_of = [&](std::size_t j) {
    others.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) others.push_back(pos[k]);
    }
    return space.index(discretize_state(pos[j], others, space));
  };

  AssociationResult assoc;
  for (int t = 1; t <= lc.learn.max_step; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = state_of(j);
      a[j] = select_action(state.tables[j], s[j], epsilon, action_rng);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const MoveResult mv = apply_action(pos[j], a[j], world.area, lc.altitudes, lc.step_m);
      pos[j] = mv.position;
      ledgers[j].add_power(
          propulsion_power(step_speed(mv.moved, lc.step_m, cfg.energy.dt), cfg.energy));
    }
    if (dynamic) world = step_mobility(world, mobility_rng, cfg.scenario.mobility);
    assoc = associate(world, pos, cfg.channel);

    for (std::size_t j = 0; j < n; ++j) {
      const NeighborReport report = broadcast_and_collect(
          static_cast<int>(j), assoc.per_uav_score, pos, lc.proximity_m, lc.broadcast_bits);
      m.max_comm_bits = std::max(m.max_comm_bits, report.cost_bits);
      const int own = assoc.per_uav_score[j];
      const double e = ledgers[j].average_step_j();
      if (t == 1) {
        prev_own[j] = own;
        prev_loc[j] = report.locality_score;
        prev_e[j] = e;
      }
      const double r =
          compute_reward(own, prev_own[j], e, prev_e[j], report.locality_score, prev_loc[j]);
      m.agents[j].reward += r;
      q_update(state.tables[j], s[j], a[j], r, state_of(j), lc.learn);
      prev_own[j] = own;
      prev_loc[j] = report.locality_score;
      prev_e[j] = e;
    }
    m.steps = t;
    if (battery_depleted(lc.rules, ledgers)) {
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

std::vector<EpisodeMetrics> run_single(const ExperimentConfig& cfg, int run) {
  const std::uint64_t seed = run_seed_of(cfg, run);
  const WorldState world = scenario_world(cfg, seed);
  const int n_devices = static_cast<int>(world.devices.size());
  std::vector<EpisodeMetrics> rows;
  switch (cfg.strategy) {
    case Strategy::Dqlsi: {
      RunState state;
      for (int e = 0; e < cfg.n_episodes; ++e) {
        rows.push_back(run_episode(cfg, world, seed, run, e, state));
      }
      break;
    }
    case Strategy::ClusterQl: {
      ClusterQlState state;
      for (int e = 0; e < cfg.n_episodes; ++e) {
        rows.push_back(run_cluster_ql_episode(cfg, world, seed, run, e, state));
      }
      break;
    }
    case Strategy::Exhaustive: {
      const auto lattice =
          make_lattice(cfg.scenario.area, cfg.exhaustive.grid_m, cfg.exhaustive.altitudes);
      const auto starts = cfg.starts();
      const PlacementSolution sol =
          exhaustive_search(world, cfg.n_uavs, lattice, cfg.channel, cfg.energy,
                            cfg.learning.step_m, cfg.exhaustive.max_combinations, starts);
      rows.push_back(placement_row(sol, run, n_devices));
      break;
    }
    case Strategy::Iterative: {
      const auto starts = cfg.starts();
      const PlacementSolution sol =
          iterative_search(world, starts, cfg.channel, cfg.energy, cfg.learning.altitudes,
                           cfg.learning.step_m, cfg.iterative.max_rounds);
      rows.push_back(placement_row(sol, run, n_devices));
      break;
    }
  }
  return rows;
}

Stat describe(const std::vector<double>& values) {
  Stat s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

Summary summarize(const std::vector<EpisodeMetrics>& rows, int window) {
  std::map<int, int> last_episode;
  for (const EpisodeMetrics& m : rows) {
    auto [it, fresh] = last_episode.emplace(m.run, m.episode);
    if (!fresh) it->second = std::max(it->second, m.episode);
  }
  std::vector<double> frac;
  std::vector<double> energy;
  std::vector<double> area;
  for (const EpisodeMetrics& m : rows) {
    if (m.episode <= last_episode[m.run] - window) continue;
    frac.push_back(printed(m.connected_fraction()));
    energy.push_back(printed(m.total_energy_j));
    area.push_back(printed(m.covered_km2));
  }
  return {describe(frac), describe(energy), describe(area)};
}

RunFailed::RunFailed(std::uint64_t seed, const std::string& what)
    : std::runtime_error("run with seed " + std::to_string(seed) + " failed: " + what),
      seed_(seed) {}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  const int n_runs = cfg.n_runs;
  std::vector<std::vector<EpisodeMetrics>> per_run(static_cast<std::size_t>(n_runs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_runs));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < n_runs; r = next++) {
      try {
        per_run[static_cast<std::size_t>(r)] = run_single(cfg, r);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(1, n_runs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (int r = 0; r < n_runs; ++r) {
    if (!errors[static_cast<std::size_t>(r)]) continue;
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(r)]);
    } catch (const std::exception& e) {
      throw RunFailed(run_seed_of(cfg, r), e.what());
    }
  }
  ExperimentResult out;
  for (auto& rows : per_run) {
    for (auto& m : rows) out.rows.push_back(std::move(m));
  }
  out.summary = summarize(out.rows, cfg.summary_window);
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_header(int n_uavs) {
  std::string h = "run,episode";
  for (int j = 0; j < n_uavs; ++j) {
    const std::string k = std::to_string(j);
    h += ",reward_" + k + ",energy_j_" + k + ",connected_" + k;
  }
  h += ",total_connected,n_devices,connected_fraction,total_energy_j,covered_km2,steps,"
       "termination,max_comm_bits";
  return h;
}

std::string csv_row(const EpisodeMetrics& m) {
  std::string r = std::to_string(m.run) + "," + std::to_string(m.episode);
  for (const AgentMetrics& a : m.agents) {
    r += "," + format_number(a.reward) + "," + format_number(a.energy_j) + "," +
         std::to_string(a.connected);
  }
  r += "," + std::to_string(m.total_connected) + "," + std::to_string(m.n_devices) + "," +
       format_number(m.connected_fraction()) + "," + format_number(m.total_energy_j) + "," +
       format_number(m.covered_km2) + "," + std::to_string(m.steps) + "," +
       std::string(to_string(m.cause)) + "," + std::to_string(m.max_comm_bits);
  return r;
}

void emit_csv(const std::vector<EpisodeMetrics>& rows, int n_uavs,
              const std::filesystem::path& path) {
  std::string text = csv_header(n_uavs) + "\n";
  for (const EpisodeMetrics& m : rows) text += csv_row(m) + "\n";
  write_file(path, text);
}

void emit_summary(const Summary& s, const ExperimentConfig& cfg,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path& text_path) {
  auto exact = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  const std::pair<const char*, const Stat*> stats[] = {
      {"connected_fraction", &s.connected_fraction},
      {"total_energy_j", &s.energy_j},
      {"covered_km2", &s.covered_km2}};

  std::string csv = "metric,count,mean,min,max,std\n";
  for (const auto& [name, st] : stats) {
    csv += std::string(name) + "," + std::to_string(st->count) + "," + exact(st->mean) + "," +
           exact(st->min) + "," + exact(st->max) + "," + exact(st->std) + "\n";
  }
  write_file(csv_path, csv);

  std::string text;
  char line[160];
  std::snprintf(line, sizeof line, "strategy %s, %d UAVs, %d runs x %d episodes, window %d\n",
                std::string(to_string(cfg.strategy)).c_str(), cfg.n_uavs, cfg.n_runs,
                cfg.n_episodes, cfg.summary_window);
  text += line;
  std::snprintf(line, sizeof line, "%-20s %6s %14s %14s %14s %14s\n", "metric", "n", "mean",
                "min", "max", "std");
  text += line;
  for (const auto& [name, st] : stats) {
    std::snprintf(line, sizeof line, "%-20s %6d %14.6g %14.6g %14.6g %14.6g\n", name,
                  st->count, st->mean, st->min, st->max, st->std);
    text += line;
  }
  write_file(text_path, text);
}

}  // namespace uavbs
