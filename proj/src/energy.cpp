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

#include "uavbs/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace uavbs {

void PowerModelParams::validate() const {
  const double fields[] = {kappa0, kappai, u_tip, v0, nu, solidity, rotor_area, rho, dt};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument("energy parameters must be positive and finite");
    }
  }
  if (induced_sign != 1.0 && induced_sign != -1.0) {
    throw std::invalid_argument("energy.induced_sign must be +1 or -1");
  }
}

double propulsion_power(double speed, const PowerModelParams& p) {
  if (!(speed >= 0.0)) throw std::invalid_argument("speed must be nonnegative");
  const double v2 = speed * speed;
  const double v02 = p.v0 * p.v0;
  const double blade = p.kappa0 * (1.0 + 3.0 * v2 / (p.u_tip * p.u_tip));
  const double inner =
      std::sqrt(1.0 + (v2 * v2) / (4.0 * v02 * v02)) + p.induced_sign * v2 / (2.0 * v02);
  const double induced = p.kappai * std::sqrt(inner);
  const double parasite = 0.5 * p.rho * p.nu * p.solidity * p.rotor_area * v2 * speed;
  return blade + induced + parasite;
}

void EnergyLedger::add_power(double watts) {
  per_step_power_.push_back(watts);
  power_sum_ += watts;
  total_j_ = dt_ * power_sum_;
}

double EnergyLedger::average_step_j() const {
  if (per_step_power_.empty()) return 0.0;
  return total_j_ / static_cast<double>(per_step_power_.size());
}

EnergyLedger step_energy(EnergyLedger ledger, double speed, const PowerModelParams& p) {
  ledger.add_power(propulsion_power(speed, p));
  return ledger;
}

double total_energy(const EnergyLedger& ledger) { return ledger.total_j() + ledger.e_c_j(); }

EnergyLedger concat(const EnergyLedger& first, const EnergyLedger& second) {
  if (first.dt() != second.dt()) throw std::invalid_argument("ledgers use different dt");
  EnergyLedger out = first;
  for (double w : second.per_step_power()) out.add_power(w);
  return out;
}

}  // namespace uavbs
