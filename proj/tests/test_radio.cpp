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

#include <cmath>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "uavbs/radio.hpp"

using namespace uavbs;

namespace {

WorldState devices_at(const std::vector<Vec2>& points) {
  WorldState w;
  for (std::size_t i = 0; i < points.size(); ++i) {
    w.devices.push_back({static_cast<int>(i), points[i], StaticMobility{}});
  }
  return w;
}

ChannelParams unit_channel(double noise) {
  ChannelParams p;
  p.eta = 1.0;
  p.alpha = 2.0;
  p.tx_power_w = 1.0;
  p.noise_w = noise;
  return p;
}

}  // namespace

TEST_CASE("radio: distance") {
  CHECK(distance3d({0, 0}, {0, 0, 100}) == 100.0);
  CHECK(distance3d({3, 0}, {0, 0, 4}) == 5.0);
  CHECK(distance3d({120, 340}, {500, 500, 150}) ==
        doctest::Approx(438.7482193696061).epsilon(1e-14));
}

TEST_CASE("radio: sinr hand values") {
  ChannelParams p = unit_channel(1.0);
  CHECK(sinr({0, 0}, {0, 0, 1}, {}, p) == doctest::Approx(1.0));
  p.tx_power_w = 4.0;
  CHECK(sinr({0, 0}, {0, 0, 2}, {}, p) == doctest::Approx(1.0));
  p = unit_channel(0.1);
  const std::vector<UavPosition> interferer = {{0, 0, 2}};
  CHECK(sinr({0, 0}, {0, 0, 1}, interferer, p) == doctest::Approx(1.0 / 0.35).epsilon(1e-14));
  CHECK_THROWS_AS(sinr({5, 5}, {5, 5, 0}, {}, p), std::domain_error);
}

TEST_CASE("radio: sinr monotonicity over random draws") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(1.0, 500.0);
  for (int trial = 0; trial < 2000; ++trial) {
    ChannelParams p = unit_channel(std::pow(10.0, -u(rng) / 50.0));
    p.alpha = 2.0 + u(rng) / 250.0;
    const Vec2 d{u(rng), u(rng)};
    const UavPosition near{d.x, d.y, u(rng)};
    const UavPosition far{d.x, d.y, near.h + 1.0 + u(rng)};
    const std::vector<UavPosition> one = {{u(rng), u(rng), u(rng)}};
    CHECK(sinr(d, near, one, p) > sinr(d, far, one, p));
    std::vector<UavPosition> two = one;
    two.push_back({u(rng), u(rng), u(rng)});
    CHECK(sinr(d, near, two, p) <= sinr(d, near, one, p));
  }
}

TEST_CASE("radio: association basics") {
  ChannelParams p = unit_channel(1e-6);
  p.sinr_threshold = 1.0;
  const WorldState one = devices_at({{0, 0}});
  const std::vector<UavPosition> uav = {{0, 0, 100}};
  AssociationResult r = associate(one, uav, p);
  CHECK(r.assignment[0] == 0);
  CHECK(connection_score(r, 0) == 1);
  CHECK(r.connected(0, 0));

  p.sinr_threshold = 1e9;
  r = associate(one, uav, p);
  CHECK(r.assignment[0] == kUnassociated);
  CHECK(connection_score(r, 0) == 0);
  CHECK(connection_score(AssociationResult{}, 0) == 0);
}

TEST_CASE("radio: capacity limit admits exactly 150") {
  ChannelParams p = unit_channel(1e-9);
  p.sinr_threshold = 1.0;
  const WorldState crowd = devices_at(std::vector<Vec2>(200, Vec2{500, 500}));
  const AssociationResult r = associate(crowd, std::vector<UavPosition>{{500, 500, 100}}, p);
  CHECK(r.per_uav_score[0] == 150);
  CHECK(r.total_connected() == 150);
}

TEST_CASE("radio: two candidates pick the stronger link") {
  ChannelParams p = unit_channel(1e-9);
  p.sinr_threshold = 0.5;
  const WorldState w = devices_at({{100, 100}});
  const std::vector<UavPosition> uavs = {{400, 400, 100}, {150, 120, 100}};
  const double s0 = sinr({100, 100}, uavs[0], std::vector<UavPosition>{uavs[1]}, p);
  const double s1 = sinr({100, 100}, uavs[1], std::vector<UavPosition>{uavs[0]}, p);
  REQUIRE(s1 > s0);
  CHECK(associate(w, uavs, p).assignment[0] == 1);
}

TEST_CASE("radio: ties go to the lowest UAV index") {
  ChannelParams p = unit_channel(1e-9);
  p.sinr_threshold = 0.5;
  const WorldState w = devices_at({{500, 500}});
  const std::vector<UavPosition> uavs = {{600, 500, 100}, {400, 500, 100}};
  p.sinr_threshold = 0.1;
  CHECK(associate(w, uavs, p).assignment[0] == 0);
}

TEST_CASE("radio: association matches brute force and respects capacity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  std::uniform_int_distribution<int> n_dev(0, 50), n_uav(1, 4), cap(1, 20);
  std::uniform_int_distribution<int> alt(5, 10);
  for (int trial = 0; trial < 500; ++trial) {
    ChannelParams p = unit_channel(1e-9);
    p.sinr_threshold = std::vector<double>{0.3, 0.7, 1.0, 5.0}[trial % 4];
    p.capacity = cap(rng);
    if (trial % 5 == 0) p.interference_range_m = 400.0;
    std::vector<Vec2> pts(static_cast<std::size_t>(n_dev(rng)));
    for (Vec2& v : pts) v = {coord(rng), coord(rng)};
    const WorldState w = devices_at(pts);
    std::vector<UavPosition> uavs(static_cast<std::size_t>(n_uav(rng)));
    for (UavPosition& u : uavs) u = {coord(rng), coord(rng), 20.0 * alt(rng)};

    const AssociationResult r = associate(w, uavs, p);
    int sum = 0;
    for (std::size_t j = 0; j < uavs.size(); ++j) {
      CHECK(r.per_uav_score[j] <= p.capacity);
      int recount = 0;
      for (int a : r.assignment) recount += a == static_cast<int>(j);
      CHECK(recount == r.per_uav_score[j]);
      sum += r.per_uav_score[j];
    }
    CHECK(sum <= std::min<int>(static_cast<int>(pts.size()),
                               static_cast<int>(uavs.size()) * p.capacity));
    if (p.interference_range_m == 0.0) CHECK(r.assignment == oracle::associate(w, uavs, p));
    CHECK(associate(w, uavs, p) == r);
  }
}

TEST_CASE("radio: full partition sums to the device count") {
  ChannelParams p = unit_channel(1e-9);
  p.sinr_threshold = 1e-3;
  std::vector<Vec2> pts;
  for (int i = 0; i < 400; ++i) pts.push_back({static_cast<double>(i % 20) * 50 + 25,
                                               static_cast<double>(i / 20) * 50 + 25});
  const std::vector<UavPosition> uavs = {{250, 250, 100}, {750, 250, 100},
                                         {250, 750, 100}, {750, 750, 100}};
  const AssociationResult r = associate(devices_at(pts), uavs, p);
  int sum = 0;
  for (int j = 0; j < 4; ++j) sum += connection_score(r, j);
  CHECK(sum == 400);
}

TEST_CASE("radio: interference cutoff removes distant interferers") {
  ChannelParams p = unit_channel(1e-6);
  p.sinr_threshold = 2.0;
  const WorldState w = devices_at({{100, 100}});
  const std::vector<UavPosition> uavs = {{100, 100, 100}, {900, 900, 100}};
  const double full = associate(w, uavs, p).sinr[0];
  p.interference_range_m = 500.0;
  const double cut = associate(w, uavs, p).sinr[0];
  CHECK(cut > full);
  CHECK(cut == doctest::Approx(1e-4 / 1e-6));
}

TEST_CASE("radio: covered area") {
  ChannelParams p = unit_channel(1e-9);
  const AreaSpec area;
  CHECK(covered_area({}, p, area, 10.0) == 0.0);
  p.sinr_threshold = 1.0;
  CHECK(covered_area(std::vector<UavPosition>{{500, 500, 100}}, p, area, 10.0) ==
        doctest::Approx(1.0));

  // Finite disk: 1 / (d^2 noise) >= 1  <=>  d^2 <= 1e5.
  p.noise_w = 1e-5;
  const UavPosition u{480, 530, 100};
  const double coarse = covered_area(std::vector<UavPosition>{u}, p, area, 10.0);
  double fine = 0.0;
  for (int ix = 0; ix < 1000; ++ix) {
    for (int iy = 0; iy < 1000; ++iy) {
      const double dx = ix + 0.5 - u.x;
      const double dy = iy + 0.5 - u.y;
      if (1.0 / ((dx * dx + dy * dy + u.h * u.h) * p.noise_w) >= p.sinr_threshold) fine += 1.0;
    }
  }
  fine /= 1e6;
  CHECK(std::abs(coarse - fine) <= 0.05 * fine);
  CHECK(fine == doctest::Approx(3.14159265 * 9e4 / 1e6).epsilon(0.01));
  CHECK_THROWS_AS(covered_area(std::vector<UavPosition>{u}, p, area, 0.0),
                  std::invalid_argument);
}

TEST_CASE("radio: covered area grows with UAVs when interference is negligible") {
  ChannelParams p = unit_channel(1e-5);
  p.sinr_threshold = 1.0;
  p.interference_range_m = 1e-3;  // below any altitude: no interferer qualifies
  std::vector<UavPosition> uavs;
  double last = 0.0;
  for (const UavPosition& u : std::vector<UavPosition>{{200, 200, 100}, {700, 300, 120},
                                                      {300, 800, 140}, {500, 500, 100}}) {
    uavs.push_back(u);
    const double now = covered_area(uavs, p, AreaSpec{}, 10.0);
    CHECK(now >= last);
    last = now;
  }
}

TEST_CASE("radio: channel validation") {
  ChannelParams p;
  CHECK_NOTHROW(p.validate());
  p.capacity = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ChannelParams{};
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ChannelParams{};
  p.noise_w = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
