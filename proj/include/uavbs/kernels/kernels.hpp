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

// Data-parallel inner loops of the radio model.
//
// Every kernel exists as a scalar reference and, where the CPU allows, a
// SIMD variant. Variants perform the same IEEE operations in the same order
// per lane, so their outputs are bit-identical to the reference; the test
// suite checks this. `active()` picks the widest supported variant at first
// use. Setting UAVBS_KERNELS=scalar in the environment forces the reference.

#pragma once

#include <cstddef>
#include <string_view>

namespace uavbs::kernels {

struct KernelSet {
  std::string_view name;

  // out[i] = eta_p * d_i^-alpha with d_i^2 = (xs[i]-ux)^2 + (ys[i]-uy)^2 + uh^2.
  // alpha == 2 and alpha == 4 take exact multiply/divide paths; any other
  // exponent goes through std::pow.
  void (*received_power)(const double* xs, const double* ys, std::size_t n,
                         double ux, double uy, double uh, double eta_p,
                         double alpha, double* out);

  // For each point i: best[i] = argmax_j signal[j][i] (ties to the lowest j)
  // and sinr[i] = signal[best][i] / (sum_{z != best} interference[z][i] + noise),
  // the interference sum taken in ascending z.
  void (*best_server)(const double* const* signal, const double* const* interference,
                      std::size_t n_uav, std::size_t n, double noise, int* best,
                      double* sinr);

  // counts[j] += number of points whose best server is j and whose SINR is
  // at least `threshold`. Same arithmetic as best_server.
  void (*count_served)(const double* const* signal, const double* const* interference,
                       std::size_t n_uav, std::size_t n, double noise,
                       double threshold, int* counts);

  // Partial best_server state over the first n_uav rows, for searches that
  // vary only the last UAV: top[i], its index (as a double), the sum of the
  // non-best interference and the sum of all interference, both ascending.
  void (*served_prefix)(const double* const* signal, const double* const* interference,
                        std::size_t n_uav, std::size_t n, double* top, double* top_idx,
                        double* excl, double* all);

  // count_served for the prefix rows plus one extra row with index
  // `last_idx` (= prefix size). Rounds exactly like count_served on the
  // full set. counts needs last_idx + 1 entries.
  void (*count_served_last)(const double* top, const double* top_idx, const double* excl,
                            const double* all, const double* last_signal,
                            const double* last_interference, std::size_t last_idx,
                            std::size_t n, double noise, double threshold, int* counts);
};

const KernelSet& scalar();

/// Returns nullptr when the SIMD variant is not compiled in or the CPU lacks it.
const KernelSet* avx2();

const KernelSet& active();

}  // namespace uavbs::kernels
