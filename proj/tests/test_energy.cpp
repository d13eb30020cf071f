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
#include "uavbs/energy.hpp"

using namespace uavbs;

// Evaluated independently (double precision, outside this code base).
constexpr double kGoldenP10 = 313.5017212719329;
constexpr double kGoldenP10Minus = 126.0336867737212;
constexpr double kGoldenP5 = 207.75799227560086;

TEST_CASE("energy: hover and golden values") {
  const PowerModelParams p;
  CHECK(propulsion_power(0.0, p) == doctest::Approx(168.49).epsilon(1e-12));
  CHECK(propulsion_power(10.0, p) == doctest::Approx(kGoldenP10).epsilon(1e-12));
  CHECK(propulsion_power(5.0, p) == doctest::Approx(kGoldenP5).epsilon(1e-12));
  PowerModelParams minus = p;
  minus.induced_sign = -1.0;
  CHECK(propulsion_power(10.0, minus) == doctest::Approx(kGoldenP10Minus).epsilon(1e-12));
  CHECK(propulsion_power(0.0, minus) == doctest::Approx(168.49).epsilon(1e-12));
  CHECK_THROWS_AS(propulsion_power(-1.0, p), std::invalid_argument);
}

TEST_CASE("energy: hover identity over random parameters") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 500.0);
  for (int i = 0; i < 1000; ++i) {
    PowerModelParams p;
    p.kappa0 = u(rng);
    p.kappai = u(rng);
    p.u_tip = u(rng);
    p.v0 = u(rng);
    const double expect = p.kappa0 + p.kappai;
    CHECK(std::abs(propulsion_power(0.0, p) - expect) <= 1e-9 * expect);
  }
}

TEST_CASE("energy: drag term dominates at high speed") {
  const PowerModelParams p;
  const double v = 2.0 * p.u_tip;
  const double drag = 0.5 * p.rho * p.nu * p.solidity * p.rotor_area * v * v * v;
  CHECK(drag / propulsion_power(v, p) > 0.5);
}

TEST_CASE("energy: ledger sums") {
  EnergyLedger l(1.0);
  CHECK(total_energy(l) == 0.0);
  for (int i = 0; i < 10; ++i) l.add_power(100.0);
  CHECK(total_energy(l) == 1000.0);
  CHECK(l.e_c_j() == 0.0);

  const PowerModelParams p;
  EnergyLedger trace(p.dt);
  double sum = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double v = i % 3 == 0 ? 0.0 : 5.0;
    trace = step_energy(trace, v, p);
    sum += i % 3 == 0 ? 168.49 : kGoldenP5;
  }
  CHECK(total_energy(trace) == doctest::Approx(p.dt * sum).epsilon(1e-12));

  EnergyLedger big(1.0);
  big.add_power(52000.0);
  CHECK(total_energy(big) == 52000.0);
}

TEST_CASE("energy: resummation, additivity and monotonicity on random traces") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> watts(0.0, 800.0);
  std::uniform_int_distribution<int> len(0, 200);
  for (int trial = 0; trial < 200; ++trial) {
    const double dt = 0.5 + trial % 7;
    EnergyLedger l(dt);
    const int n = len(rng);
    double last = 0.0;
    for (int i = 0; i < n; ++i) {
      l.add_power(watts(rng));
      CHECK(total_energy(l) >= last);
      last = total_energy(l);
    }
    double sum = 0.0;
    for (double w : l.per_step_power()) sum += w;
    CHECK(total_energy(l) == dt * sum);

    const std::size_t cut = n == 0 ? 0 : static_cast<std::size_t>(trial) % (n + 1);
    EnergyLedger a(dt), b(dt);
    for (std::size_t i = 0; i < l.per_step_power().size(); ++i) {
      (i < cut ? a : b).add_power(l.per_step_power()[i]);
    }
    CHECK(total_energy(concat(a, b)) == total_energy(l));
  }
}

TEST_CASE("energy: parameter validation") {
  PowerModelParams p;
  p.rho = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = PowerModelParams{};
  p.induced_sign = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
