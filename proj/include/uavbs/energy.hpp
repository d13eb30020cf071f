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

// Rotary-wing propulsion power and per-UAV energy accounting.
//
//   P(V) = k0 (1 + 3V^2/U_tip^2)
//        + ki (sqrt(1 + V^4/(4 v0^4)) + sign * V^2/(2 v0^2))^(1/2)
//        + (rho/2) nu s A V^3
//
// `sign` is +1 by default; -1 gives the classical induced-power form. Both
// agree at hover, where P(0) = k0 + ki. Communication energy is neglected
// and kept as a zero field of the ledger.

#pragma once

#include <vector>

namespace uavbs {

struct PowerModelParams {
  double kappa0 = 79.86;   // W, blade profile
  double kappai = 88.63;   // W, induced
  double u_tip = 120.0;    // m/s
  double v0 = 4.03;        // m/s, mean rotor induced velocity in hover
  double nu = 0.6;         // fuselage drag ratio
  double solidity = 0.05;
  double rotor_area = 0.503;  // m^2
  double rho = 1.225;         // kg/m^3
  double dt = 4.0;            // s per simulation step
  double induced_sign = 1.0;  // +1 or -1

  void validate() const;
};

double propulsion_power(double speed, const PowerModelParams& p);

class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(double dt) : dt_(dt) {}

  void add_power(double watts);

  const std::vector<double>& per_step_power() const { return per_step_power_; }
  double dt() const { return dt_; }
  double power_sum() const { return power_sum_; }
  /// Propulsion energy dt * sum of per-step power, in joules.
  double total_j() const { return total_j_; }
  double e_c_j() const { return 0.0; }
  std::size_t steps() const { return per_step_power_.size(); }
  /// Mean energy per step so far (0 before the first step).
  double average_step_j() const;

 private:
  std::vector<double> per_step_power_;
  double dt_ = 4.0;
  double power_sum_ = 0.0;
  double total_j_ = 0.0;
};

/// Returns `ledger` with one more step flown at `speed`.
EnergyLedger step_energy(EnergyLedger ledger, double speed, const PowerModelParams& p);

/// e_T = e_P + e_C.
double total_energy(const EnergyLedger& ledger);

/// Ledger of `first`'s trace followed by `second`'s (same dt required).
EnergyLedger concat(const EnergyLedger& first, const EnergyLedger& second);

}  // namespace uavbs
