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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "uavbs/runner.hpp"

using namespace uavbs;

namespace {

ExperimentConfig tiny() {
  ExperimentConfig c;
  c.n_uavs = 3;
  c.n_runs = 2;
  c.n_episodes = 6;
  c.summary_window = 3;
  c.scenario.area = {400, 400};
  c.scenario.n_static = 30;
  c.scenario.n_mobile = 30;
  c.channel.sinr_threshold = 0.7;
  c.learning.learn.max_step = 120;
  c.learning.learn.epsilon_decay = 0.8;
  return c;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("runner: zero-length episode") {
  ExperimentConfig c = tiny();
  c.learning.learn.max_step = 0;
  RunState st;
  const EpisodeMetrics m = run_episode(c, scenario_world(c, 1), 1, 0, 0, st);
  CHECK(m.steps == 0);
  CHECK(m.total_connected == 0);
  CHECK(m.total_energy_j == 0.0);
  CHECK(m.covered_km2 == 0.0);
  CHECK(m.cause == Termination::MaxStep);
}

TEST_CASE("runner: replay determinism and persistence") {
  const ExperimentConfig c = tiny();
  const WorldState w = scenario_world(c, 5);
  RunState a, b;
  std::size_t touched = 0;
  for (int e = 0; e < 4; ++e) {
    const EpisodeMetrics x = run_episode(c, w, 5, 0, e, a);
    const EpisodeMetrics y = run_episode(c, w, 5, 0, e, b);
    CHECK(x == y);
    CHECK(x.steps <= c.learning.learn.max_step);
    CHECK(x.total_connected <= std::min<int>(60, 3 * c.channel.capacity));
    CHECK(x.max_comm_bits <= (c.n_uavs - 1) * c.learning.broadcast_bits);
    std::size_t now = 0;
    for (const QTable& q : a.tables) now += q.touched_count();
    CHECK(now >= touched);
    touched = now;
  }
  CHECK(a.tables == b.tables);
}

TEST_CASE("runner: goal and battery termination") {
  ExperimentConfig c = tiny();
  c.learning.rules.battery_budget_j = 5000.0;
  RunState st;
  const EpisodeMetrics dead = run_episode(c, scenario_world(c, 2), 2, 0, 0, st);
  CHECK(dead.cause == Termination::Dead);
  CHECK(dead.steps < 10);

  c = tiny();
  c.learning.rules.goal_fraction = 0.01;
  c.learning.rules.goal_sustain_steps = 3;
  RunState st2;
  const EpisodeMetrics goal = run_episode(c, scenario_world(c, 2), 2, 0, 0, st2);
  CHECK(goal.cause == Termination::Goal);
  CHECK(goal.steps == 3);
}

TEST_CASE("runner: experiment rows, CSV and summary") {
  const ExperimentConfig c = tiny();
  const ExperimentResult r = run_experiment(c);
  CHECK(r.rows.size() == 12);
  for (const EpisodeMetrics& m : r.rows) {
    int sum = 0;
    for (const AgentMetrics& a : m.agents) sum += a.connected;
    CHECK(sum == m.total_connected);
    CHECK(m.total_energy_j >= 0.0);
  }
  const ExperimentResult threaded = run_experiment(c, 2);
  CHECK(threaded.rows == r.rows);

  const auto dir = std::filesystem::temp_directory_path() / "uavbs_runner_test";
  std::filesystem::remove_all(dir);
  emit_csv(r.rows, c.n_uavs, dir / "a.csv");
  emit_csv(r.rows, c.n_uavs, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  emit_csv({}, c.n_uavs, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == csv_header(c.n_uavs) + "\n");

  const auto rows = read_csv(dir / "a.csv");
  REQUIRE(rows.size() == 13);
  const auto& header = rows[0];
  CHECK(header[0] == "run");
  CHECK(header[1] == "episode");
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) -
                                    header.begin());
  };
  std::vector<double> frac, energy, area;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == header.size());
    if (std::stoi(rows[i][1]) < c.n_episodes - c.summary_window) continue;
    frac.push_back(std::stod(rows[i][col("connected_fraction")]));
    energy.push_back(std::stod(rows[i][col("total_energy_j")]));
    area.push_back(std::stod(rows[i][col("covered_km2")]));
  }
  const Stat f = describe(frac);
  CHECK(f.count == 6);
  CHECK(f.mean == r.summary.connected_fraction.mean);
  CHECK(f.std == r.summary.connected_fraction.std);
  CHECK(describe(energy).mean == r.summary.energy_j.mean);
  CHECK(describe(area).max == r.summary.covered_km2.max);
  std::filesystem::remove_all(dir);
}

TEST_CASE("runner: number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(format_number(0.925) == "0.925");
}

TEST_CASE("runner: placement strategies emit one row per run") {
  ExperimentConfig c = tiny();
  c.strategy = Strategy::Iterative;
  CHECK(run_experiment(c).rows.size() == 2);
  c.strategy = Strategy::Exhaustive;
  c.n_uavs = 2;
  c.exhaustive.grid_m = 100;
  const ExperimentResult r = run_experiment(c);
  CHECK(r.rows.size() == 2);
  CHECK(r.rows[0].steps == 0);
}

TEST_CASE("runner: failing runs report their seed") {
  ExperimentConfig c = tiny();
  c.strategy = Strategy::Exhaustive;
  c.exhaustive.max_combinations = 1;
  c.base_seed = 40;
  try {
    run_experiment(c);
    FAIL("expected RunFailed");
  } catch (const RunFailed& e) {
    CHECK(e.seed() == 40u);
    CHECK(std::string(e.what()).find("40") != std::string::npos);
  }
}
