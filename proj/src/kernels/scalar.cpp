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
#include <limits>

#include "kernels/scalar_impl.hpp"
#include "uavbs/kernels/kernels.hpp"

namespace uavbs::kernels {
namespace detail {

void received_power_scalar(const double* xs, const double* ys, std::size_t n,
                           double ux, double uy, double uh, double eta_p,
                           double alpha, double* out) {
  const double h2 = uh * uh;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - ux;
    const double dy = ys[i] - uy;
    const double d2 = (dx * dx + dy * dy) + h2;
    if (alpha == 2.0) {
      out[i] = eta_p / d2;
    } else if (alpha == 4.0) {
      out[i] = eta_p / (d2 * d2);
    } else {
      out[i] = eta_p * std::pow(d2, -0.5 * alpha);
    }
  }
}

void best_server_scalar(const double* const* signal, const double* const* interference,
                        std::size_t n_uav, std::size_t begin, std::size_t end,
                        double noise, int* best, double* sinr) {
  for (std::size_t i = begin; i < end; ++i) {
    std::size_t b = 0;
    double top = signal[0][i];
    for (std::size_t j = 1; j < n_uav; ++j) {
      if (signal[j][i] > top) {
        top = signal[j][i];
        b = j;
      }
    }
    double interf = 0.0;
    for (std::size_t z = 0; z < n_uav; ++z) {
      if (z != b) interf += interference[z][i];
    }
    best[i] = static_cast<int>(b);
    sinr[i] = top / (interf + noise);
  }
}

void count_served_scalar(const double* const* signal, const double* const* interference,
                         std::size_t n_uav, std::size_t begin, std::size_t end,
                         double noise, double threshold, int* counts) {
  for (std::size_t i = begin; i < end; ++i) {
    std::size_t b = 0;
    double top = signal[0][i];
    for (std::size_t j = 1; j < n_uav; ++j) {
      if (signal[j][i] > top) {
        top = signal[j][i];
        b = j;
      }
    }
    double interf = 0.0;
    for (std::size_t z = 0; z < n_uav; ++z) {
      if (z != b) interf += interference[z][i];
    }
    if (top / (interf + noise) >= threshold) ++counts[b];
  }
}

void served_prefix_scalar(const double* const* signal, const double* const* interference,
                          std::size_t n_uav, std::size_t begin, std::size_t end,
                          double* top, double* top_idx, double* excl, double* all) {
  for (std::size_t i = begin; i < end; ++i) {
    if (n_uav == 0) {
      top[i] = -std::numeric_limits<double>::infinity();
      top_idx[i] = 0.0;
      excl[i] = 0.0;
      all[i] = 0.0;
      continue;
    }
    std::size_t b = 0;
    double t = signal[0][i];
    for (std::size_t j = 1; j < n_uav; ++j) {
      if (signal[j][i] > t) {
        t = signal[j][i];
        b = j;
      }
    }
    double ex = 0.0;
    double sum = 0.0;
    for (std::size_t z = 0; z < n_uav; ++z) {
      if (z != b) ex += interference[z][i];
      sum += interference[z][i];
    }
    top[i] = t;
    top_idx[i] = static_cast<double>(b);
    excl[i] = ex;
    all[i] = sum;
  }
}

void count_served_last_scalar(const double* top, const double* top_idx, const double* excl,
                              const double* all, const double* last_signal,
                              const double* last_interference, std::size_t last_idx,
                              std::size_t begin, std::size_t end, double noise,
                              double threshold, int* counts) {
  for (std::size_t i = begin; i < end; ++i) {
    if (last_signal[i] > top[i]) {
      if (last_signal[i] / (all[i] + noise) >= threshold) ++counts[last_idx];
    } else {
      if (top[i] / ((excl[i] + last_interference[i]) + noise) >= threshold) {
        ++counts[static_cast<std::size_t>(top_idx[i])];
      }
    }
  }
}

}  // namespace detail

namespace {

void best_server(const double* const* signal, const double* const* interference,
                 std::size_t n_uav, std::size_t n, double noise, int* best,
                 double* sinr) {
  if (n_uav == 0) return;
  detail::best_server_scalar(signal, interference, n_uav, 0, n, noise, best, sinr);
}

void count_served(const double* const* signal, const double* const* interference,
                  std::size_t n_uav, std::size_t n, double noise, double threshold,
                  int* counts) {
  if (n_uav == 0) return;
  detail::count_served_scalar(signal, interference, n_uav, 0, n, noise, threshold,
                              counts);
}

void served_prefix(const double* const* signal, const double* const* interference,
                   std::size_t n_uav, std::size_t n, double* top, double* top_idx,
                   double* excl, double* all) {
  detail::served_prefix_scalar(signal, interference, n_uav, 0, n, top, top_idx, excl, all);
}

void count_served_last(const double* top, const double* top_idx, const double* excl,
                       const double* all, const double* last_signal,
                       const double* last_interference, std::size_t last_idx, std::size_t n,
                       double noise, double threshold, int* counts) {
  detail::count_served_last_scalar(top, top_idx, excl, all, last_signal, last_interference,
                                   last_idx, 0, n, noise, threshold, counts);
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar",      &detail::received_power_scalar,
                             &best_server,  &count_served,
                             &served_prefix, &count_served_last};
  return set;
}

}  // namespace uavbs::kernels
