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

#include <array>
#include <cmath>
#include <random>

#include "corridor.hpp"
#include <stdexcept>

#include "doctest.h"
#include "uavbs/agent.hpp"

using namespace uavbs;

namespace {

const std::vector<double> kLadder = {100, 120, 140, 160, 180, 200};

StateSpace default_space() { return StateSpace{}; }

}  // namespace

TEST_CASE("agent: seven actions") {
  CHECK(kAllActions.size() == 7);
  CHECK(to_string(ActionKind::Up) == "up");
  CHECK(to_string(ActionKind::Stationary) == "stationary");
}

TEST_CASE("agent: discretize") {
  const StateSpace s = default_space();
  CHECK(s.size() == 50u * 50u * 6u * 3u);
  StateKey k = discretize_state({0, 0, 100}, {}, s);
  CHECK(k == StateKey{0, 0, 0, NeighborBucket::Far});
  const std::vector<UavPosition> n = {{530, 500, 120}};
  k = discretize_state({500, 500, 120}, n, s);
  CHECK(k == StateKey{25, 25, 1, NeighborBucket::Near});
  const std::vector<UavPosition> mid = {{600, 500, 120}};
  CHECK(discretize_state({500, 500, 120}, mid, s).neighbor == NeighborBucket::Mid);
  CHECK(discretize_state({1000, 1000, 200}, {}, s) == StateKey{49, 49, 5, NeighborBucket::Far});
  CHECK(discretize_state({500, 500, 120}, n, s) == discretize_state({500, 500, 120}, n, s));
  CHECK_THROWS_AS(discretize_state({500, 500, 130}, {}, s), std::invalid_argument);
  CHECK(s.index(discretize_state({1000, 1000, 200}, {}, s)) < s.size());
}

TEST_CASE("agent: apply_action") {
  const AreaSpec area;
  MoveResult m = apply_action({500, 500, 120}, ActionKind::Stationary, area, kLadder);
  CHECK(m.position == UavPosition{500, 500, 120});
  CHECK_FALSE(m.moved);
  m = apply_action({500, 500, 120}, ActionKind::Forward, area, kLadder);
  CHECK(m.position == UavPosition{500, 520, 120});
  CHECK(apply_action({500, 500, 120}, ActionKind::Backward, area, kLadder).position ==
        UavPosition{500, 480, 120});
  CHECK(apply_action({500, 500, 120}, ActionKind::Left, area, kLadder).position ==
        UavPosition{480, 500, 120});
  CHECK(apply_action({500, 500, 120}, ActionKind::Up, area, kLadder).position ==
        UavPosition{500, 500, 140});
  CHECK(apply_action({500, 500, 120}, ActionKind::Down, area, kLadder).position ==
        UavPosition{500, 500, 100});
  m = apply_action({990, 500, 120}, ActionKind::Right, area, kLadder);
  CHECK(m.position == UavPosition{990, 500, 120});
  CHECK(m.boundary_hit);
  CHECK_FALSE(m.moved);
  m = apply_action({500, 500, 200}, ActionKind::Up, area, kLadder);
  CHECK(m.boundary_hit);
  CHECK(m.position.h == 200);
}

TEST_CASE("agent: greedy selection and tie rule") {
  QTable q(1);
  Rng rng(1);
  CHECK(select_action(q, 0, 0.0, rng) == ActionKind::Up);
  q.set(0, ActionKind::Stationary, 1.0);
  CHECK(select_action(q, 0, 0.0, rng) == ActionKind::Stationary);
}

TEST_CASE("agent: greedy choice is invariant under positive affine maps") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-10.0, 10.0), scale(0.1, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<double, kActionCount> row{}, mapped{};
    const double a = scale(rng), b = u(rng);
    for (std::size_t k = 0; k < row.size(); ++k) {
      row[k] = u(rng);
      mapped[k] = a * row[k] + b;
    }
    CHECK(greedy_action(row) == greedy_action(mapped));
  }
}

TEST_CASE("agent: exploration is uniform over actions") {
  QTable q(1);
  q.set(0, ActionKind::Left, 5.0);
  Rng rng(12345);
  std::array<int, kActionCount> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(select_action(q, 0, 1.0, rng))];
  double chi2 = 0.0;
  const double expect = draws / 7.0;
  for (int c : counts) {
    CHECK(std::abs(c / static_cast<double>(draws) - 1.0 / 7.0) < 0.01);
    chi2 += (c - expect) * (c - expect) / expect;
  }
  CHECK(chi2 < 22.458);  // df = 6, p = 0.001
}

TEST_CASE("agent: reward table") {
  CHECK(compute_reward(6, 5, 10, 10, 13, 12) == 2.0);
  CHECK(compute_reward(5, 5, 10, 10, 12, 13) == -1.0);
  CHECK(compute_reward(5, 6, 1, 2, 13, 12) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(compute_reward(0, 0, 0.0, 0.0, 0, 0) == -1.0);
}

TEST_CASE("agent: reward bounds and antisymmetric bonus") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> score(0, 400);
  std::uniform_real_distribution<double> e(0.0, 1e6);
  for (int i = 0; i < 100000; ++i) {
    const int a = score(rng), b = score(rng), la = score(rng), lb = score(rng);
    const double ea = i % 10 == 0 ? 0.0 : e(rng), eb = e(rng);
    const double r = compute_reward(a, b, ea, eb, la, lb);
    CHECK(r >= -3.0);
    CHECK(r <= 3.0);
    const double energy = compute_reward(a, a, ea, eb, 0, 0) + 1.0;
    CHECK(energy >= -1.0);
    CHECK(energy <= 1.0);
    if (a != b) {
      const double swapped = compute_reward(b, a, ea, eb, la, lb);
      CHECK(r - swapped == doctest::Approx(2.0 * (a > b ? 1 : -1)));
    }
  }
}

TEST_CASE("agent: q_update hand values") {
  LearnParams p;
  QTable q(2);
  p.learning_rate = 1.0;
  p.discount = 0.0;
  q_update(q, 0, ActionKind::Up, 5.0, 1, p);
  CHECK(q.value(0, ActionKind::Up) == 5.0);

  QTable frozen(2);
  frozen.set(1, ActionKind::Down, 3.0);
  const QTable before = frozen;
  p.learning_rate = 0.0;
  q_update(frozen, 0, ActionKind::Up, 7.0, 1, p);
  CHECK(frozen.values() == before.values());

  QTable h(2);
  h.set(1, ActionKind::Right, 10.0);
  p.learning_rate = 0.5;
  p.discount = 0.9;
  q_update(h, 0, ActionKind::Left, 1.0, 1, p);
  CHECK(h.value(0, ActionKind::Left) == 5.0);
}

TEST_CASE("agent: q_update touches one cell and stays bounded") {
  std::mt19937_64 rng(17);
  const std::size_t n_states = 6;
  QTable q(n_states);
  LearnParams p;
  p.discount = 0.9;
  std::uniform_int_distribution<std::size_t> st(0, n_states - 1);
  std::uniform_int_distribution<int> act(0, kActionCount - 1);
  std::uniform_real_distribution<double> r(-3.0, 3.0), lr(1e-3, 1.0);
  const double bound = 3.0 / (1.0 - p.discount);
  for (int i = 0; i < 20000; ++i) {
    const QTable before = q;
    const std::size_t s = st(rng);
    const ActionKind a = kAllActions[static_cast<std::size_t>(act(rng))];
    p.learning_rate = lr(rng);
    q_update(q, s, a, r(rng), st(rng), p);
    int changed = 0;
    for (std::size_t k = 0; k < q.values().size(); ++k) {
      if (q.values()[k] != before.values()[k]) {
        ++changed;
        CHECK(k == s * kActionCount + static_cast<std::size_t>(a));
      }
    }
    CHECK(changed <= 1);
    for (double v : q.values()) CHECK(std::abs(v) <= bound);
  }
}

TEST_CASE("agent: epsilon schedule") {
  LearnParams p;
  CHECK(p.epsilon_for_episode(0) == 1.0);
  CHECK(p.epsilon_for_episode(1) == doctest::Approx(0.995));
  CHECK(p.epsilon_for_episode(100000) == p.epsilon_min);
}

TEST_CASE("agent: corridor learner matches value iteration") {
  LearnParams p;
  p.learning_rate = 0.5;
  p.discount = 0.9;
  p.epsilon_decay = 0.97;
  const auto trained = corridor::train(p, 10000, 42);
  CHECK(trained.updates <= 10000);
  CHECK(corridor::policy_is_optimal(trained.q, p.discount));
  const auto opt = corridor::optimal_actions(p.discount);
  for (const auto& set : opt) CHECK(set == std::vector<ActionKind>{ActionKind::Right});
}

TEST_CASE("agent: broadcast") {
  const std::vector<int> one = {7};
  const std::vector<UavPosition> p1 = {{0, 0, 100}};
  NeighborReport r = broadcast_and_collect(0, one, p1, 1500.0);
  CHECK(r.neighbor_scores.empty());
  CHECK(r.locality_score == 7);
  CHECK(r.cost_bits == 0);

  const std::vector<int> scores = {10, 20, 30, 40};
  const std::vector<UavPosition> pos = {{100, 100, 200}, {900, 100, 200},
                                        {100, 900, 200}, {900, 900, 200}};
  r = broadcast_and_collect(0, scores, pos, 1500.0, 16);
  CHECK(r.messages == 3);
  CHECK(r.cost_bits == 48);
  CHECK(r.locality_score == 100);

  r = broadcast_and_collect(0, scores, pos, 1000.0, 16);
  CHECK(r.messages == 2);
  CHECK(r.locality_score == 60);
  CHECK(r.cost_bits <= 3 * 16);
}

TEST_CASE("agent: validation") {
  LearnParams p;
  CHECK_NOTHROW(p.validate());
  p.learning_rate = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  StateSpace s;
  s.near_m = 300;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
