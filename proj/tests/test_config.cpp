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

#include "doctest.h"
#include "uavbs/config.hpp"

using namespace uavbs;

TEST_CASE("config: defaults") {
  const ExperimentConfig c = parse_config("");
  CHECK(c.strategy == Strategy::Dqlsi);
  CHECK(c.n_uavs == 4);
  CHECK(c.n_episodes == 100);
  CHECK(c.n_runs == 20);
  CHECK(c.scenario.n_static == 400);
  CHECK(c.channel.capacity == 150);
  CHECK(c.learning.learn.max_step == 10000);
  CHECK(c.learning.step_m == 20.0);
  const auto starts = c.starts();
  REQUIRE(starts.size() == 4);
  for (const UavPosition& p : starts) CHECK(p.h == 200.0);
}

TEST_CASE("config: parse and round trip") {
  const std::string text = R"(
[experiment]
strategy = cql
n_uavs = 3
n_runs = 2
base_seed = 99

[scenario]
n_static = 10
n_mobile = 5
distribution = clustered
cluster_centers = 100, 100; 800, 700

[channel]
sinr_threshold = 0.7
capacity = 40

[energy]
induced_sign = -1

[learning]
altitudes = 100, 150
epsilon_decay = 0.9
goal_enabled = false
start_positions = 100, 100, 150; 500, 500, 100; 900, 900, 150

[es]
altitudes = 100, 150
)";
  const ExperimentConfig c = parse_config(text);
  CHECK(c.strategy == Strategy::ClusterQl);
  CHECK(c.n_uavs == 3);
  CHECK(c.base_seed == 99u);
  CHECK(c.scenario.distribution == DistributionKind::Clustered);
  CHECK(c.scenario.cluster_centers.size() == 2);
  CHECK(c.channel.sinr_threshold == 0.7);
  CHECK(c.energy.induced_sign == -1.0);
  CHECK(c.learning.altitudes == std::vector<double>{100, 150});
  CHECK_FALSE(c.learning.rules.goal_enabled);
  CHECK(c.starts()[1] == UavPosition{500, 500, 100});

  const ExperimentConfig again = parse_config(to_ini(c));
  CHECK(to_ini(again) == to_ini(c));
}

TEST_CASE("config: rejects invalid input with a named reason") {
  auto reason = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(reason("[channel]\ncapacity = 0\n").find("capacity") != std::string::npos);
  CHECK(reason("[channel]\nbogus = 1\n").find("bogus") != std::string::npos);
  CHECK(reason("[nowhere]\nx = 1\n").find("nowhere") != std::string::npos);
  CHECK(reason("[experiment]\nstrategy = annealing\n").find("strategy") != std::string::npos);
  CHECK(reason("[experiment]\nn_uavs = four\n").find("n_uavs") != std::string::npos);
  CHECK(reason("[scenario]\nwidth_m = -5\n") != "accepted");
  CHECK(reason("[scenario]\ndistribution = clustered\ncluster_centers = 2000, 1\n") !=
        "accepted");
  CHECK(reason("[learning]\nstart_positions = 105, 100, 200\n") != "accepted");
  CHECK(reason("[experiment]\nn_uavs = 2\n[learning]\nstart_positions = 100, 100, 200\n") !=
        "accepted");
  CHECK(reason("[energy]\nrho = 0\n") != "accepted");
  CHECK_THROWS_AS(load_config("/nonexistent/x.ini"), ConfigError);
}

TEST_CASE("config: strategies") {
  CHECK(parse_strategy("es") == Strategy::Exhaustive);
  CHECK(parse_strategy("is") == Strategy::Iterative);
  CHECK(parse_strategy("dqlsi") == Strategy::Dqlsi);
  CHECK(to_string(Strategy::ClusterQl) == "cql");
}
