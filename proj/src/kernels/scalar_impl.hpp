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

// Scalar loops over index ranges; SIMD variants use them for tails.

#pragma once

#include <cstddef>

namespace uavbs::kernels::detail {

void received_power_scalar(const double* xs, const double* ys, std::size_t n,
                           double ux, double uy, double uh, double eta_p,
                           double alpha, double* out);

void best_server_scalar(const double* const* signal, const double* const* interference,
                        std::size_t n_uav, std::size_t begin, std::size_t end,
                        double noise, int* best, double* sinr);

void count_served_scalar(const double* const* signal, const double* const* interference,
                         std::size_t n_uav, std::size_t begin, std::size_t end,
                         double noise, double threshold, int* counts);

void served_prefix_scalar(const double* const* signal, const double* const* interference,
                          std::size_t n_uav, std::size_t begin, std::size_t end,
                          double* top, double* top_idx, double* excl, double* all);

void count_served_last_scalar(const double* top, const double* top_idx, const double* excl,
                              const double* all, const double* last_signal,
                              const double* last_interference, std::size_t last_idx,
                              std::size_t begin, std::size_t end, double noise,
                              double threshold, int* counts);

}  // namespace uavbs::kernels::detail
