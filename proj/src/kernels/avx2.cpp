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

// AVX2 variants, four doubles per lane group. This translation unit is the
// only one compiled with -mavx2; nothing here may be called unless the
// dispatcher confirmed CPU support.

#include <immintrin.h>

#include <bit>

#include "kernels/scalar_impl.hpp"
#include "uavbs/kernels/kernels.hpp"

namespace uavbs::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void received_power_avx2(const double* xs, const double* ys, std::size_t n, double ux,
                         double uy, double uh, double eta_p, double alpha, double* out) {
  if (alpha != 2.0 && alpha != 4.0) {
    detail::received_power_scalar(xs, ys, n, ux, uy, uh, eta_p, alpha, out);
    return;
  }
  const bool quartic = alpha == 4.0;
  const __m256d vx = _mm256_set1_pd(ux);
  const __m256d vy = _mm256_set1_pd(uy);
  const __m256d vh2 = _mm256_set1_pd(uh * uh);
  const __m256d vp = _mm256_set1_pd(eta_p);
  const std::size_t n4 = n - n % kLanes;
  for (std::size_t i = 0; i < n4; i += kLanes) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
    __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    d2 = _mm256_add_pd(d2, vh2);
    if (quartic) d2 = _mm256_mul_pd(d2, d2);
    _mm256_storeu_pd(out + i, _mm256_div_pd(vp, d2));
  }
  detail::received_power_scalar(xs + n4, ys + n4, n - n4, ux, uy, uh, eta_p, alpha,
                                out + n4);
}

// Lane-parallel argmax over UAVs plus the masked interference sum.
inline void best_and_sinr(const double* const* signal, const double* const* interference,
                          std::size_t n_uav, std::size_t i, __m256d noise,
                          __m256d& best_idx, __m256d& sinr) {
  __m256d top = _mm256_loadu_pd(signal[0] + i);
  __m256d idx = _mm256_setzero_pd();
  for (std::size_t j = 1; j < n_uav; ++j) {
    const __m256d s = _mm256_loadu_pd(signal[j] + i);
    const __m256d gt = _mm256_cmp_pd(s, top, _CMP_GT_OQ);
    top = _mm256_blendv_pd(top, s, gt);
    idx = _mm256_blendv_pd(idx, _mm256_set1_pd(static_cast<double>(j)), gt);
  }
  __m256d interf = _mm256_setzero_pd();
  for (std::size_t z = 0; z < n_uav; ++z) {
    const __m256d other =
        _mm256_cmp_pd(idx, _mm256_set1_pd(static_cast<double>(z)), _CMP_NEQ_OQ);
    interf = _mm256_add_pd(interf, _mm256_and_pd(other, _mm256_loadu_pd(interference[z] + i)));
  }
  best_idx = idx;
  sinr = _mm256_div_pd(top, _mm256_add_pd(interf, noise));
}

void best_server_avx2(const double* const* signal, const double* const* interference,
                      std::size_t n_uav, std::size_t n, double noise, int* best,
                      double* sinr) {
  if (n_uav == 0) return;
  const __m256d vnoise = _mm256_set1_pd(noise);
  const std::size_t n4 = n - n % kLanes;
  for (std::size_t i = 0; i < n4; i += kLanes) {
    __m256d idx, s;
    best_and_sinr(signal, interference, n_uav, i, vnoise, idx, s);
    _mm256_storeu_pd(sinr + i, s);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(best + i), _mm256_cvttpd_epi32(idx));
  }
  detail::best_server_scalar(signal, interference, n_uav, n4, n, noise, best, sinr);
}

void count_served_avx2(const double* const* signal, const double* const* interference,
                       std::size_t n_uav, std::size_t n, double noise, double threshold,
                       int* counts) {
  if (n_uav == 0) return;
  const __m256d vnoise = _mm256_set1_pd(noise);
  const __m256d vth = _mm256_set1_pd(threshold);
  const std::size_t n4 = n - n % kLanes;
  for (std::size_t i = 0; i < n4; i += kLanes) {
    __m256d idx, s;
    best_and_sinr(signal, interference, n_uav, i, vnoise, idx, s);
    const __m256d served = _mm256_cmp_pd(s, vth, _CMP_GE_OQ);
    if (_mm256_movemask_pd(served) == 0) continue;
    for (std::size_t j = 0; j < n_uav; ++j) {
      const __m256d mine = _mm256_and_pd(
          served, _mm256_cmp_pd(idx, _mm256_set1_pd(static_cast<double>(j)), _CMP_EQ_OQ));
      counts[j] += std::popcount(static_cast<unsigned>(_mm256_movemask_pd(mine)));
    }
  }
  detail::count_served_scalar(signal, interference, n_uav, n4, n, noise, threshold,
                              counts);
}

void served_prefix_avx2(const double* const* signal, const double* const* interference,
                        std::size_t n_uav, std::size_t n, double* top, double* top_idx,
                        double* excl, double* all) {
  if (n_uav == 0) {
    detail::served_prefix_scalar(signal, interference, 0, 0, n, top, top_idx, excl, all);
    return;
  }
  const std::size_t n4 = n - n % kLanes;
  for (std::size_t i = 0; i < n4; i += kLanes) {
    __m256d t = _mm256_loadu_pd(signal[0] + i);
    __m256d idx = _mm256_setzero_pd();
    for (std::size_t j = 1; j < n_uav; ++j) {
      const __m256d s = _mm256_loadu_pd(signal[j] + i);
      const __m256d gt = _mm256_cmp_pd(s, t, _CMP_GT_OQ);
      t = _mm256_blendv_pd(t, s, gt);
      idx = _mm256_blendv_pd(idx, _mm256_set1_pd(static_cast<double>(j)), gt);
    }
    __m256d ex = _mm256_setzero_pd();
    __m256d sum = _mm256_setzero_pd();
    for (std::size_t z = 0; z < n_uav; ++z) {
      const __m256d v = _mm256_loadu_pd(interference[z] + i);
      const __m256d other =
          _mm256_cmp_pd(idx, _mm256_set1_pd(static_cast<double>(z)), _CMP_NEQ_OQ);
      ex = _mm256_add_pd(ex, _mm256_and_pd(other, v));
      sum = _mm256_add_pd(sum, v);
    }
    _mm256_storeu_pd(top + i, t);
    _mm256_storeu_pd(top_idx + i, idx);
    _mm256_storeu_pd(excl + i, ex);
    _mm256_storeu_pd(all + i, sum);
  }
  detail::served_prefix_scalar(signal, interference, n_uav, n4, n, top, top_idx, excl, all);
}

void count_served_last_avx2(const double* top, const double* top_idx, const double* excl,
                            const double* all, const double* last_signal,
                            const double* last_interference, std::size_t last_idx,
                            std::size_t n, double noise, double threshold, int* counts) {
  constexpr std::size_t kMaxVectorSlots = 8;
  if (last_idx >= kMaxVectorSlots) {
    detail::count_served_last_scalar(top, top_idx, excl, all, last_signal, last_interference,
                                     last_idx, 0, n, noise, threshold, counts);
    return;
  }
  const __m256d vnoise = _mm256_set1_pd(noise);
  const __m256d vth = _mm256_set1_pd(threshold);
  const __m256d vlast = _mm256_set1_pd(static_cast<double>(last_idx));
  // Per-slot lane counters; an all-ones compare mask is -1 as int64.
  __m256i acc[kMaxVectorSlots];
  for (std::size_t j = 0; j <= last_idx; ++j) acc[j] = _mm256_setzero_si256();
  const std::size_t n4 = n - n % kLanes;
  for (std::size_t i = 0; i < n4; i += kLanes) {
    const __m256d s = _mm256_loadu_pd(last_signal + i);
    const __m256d t = _mm256_loadu_pd(top + i);
    const __m256d gt = _mm256_cmp_pd(s, t, _CMP_GT_OQ);
    const __m256d kept =
        _mm256_add_pd(_mm256_loadu_pd(excl + i), _mm256_loadu_pd(last_interference + i));
    const __m256d interf = _mm256_blendv_pd(kept, _mm256_loadu_pd(all + i), gt);
    const __m256d sinr =
        _mm256_div_pd(_mm256_blendv_pd(t, s, gt), _mm256_add_pd(interf, vnoise));
    const __m256d served = _mm256_cmp_pd(sinr, vth, _CMP_GE_OQ);
    const __m256d idx = _mm256_blendv_pd(_mm256_loadu_pd(top_idx + i), vlast, gt);
    for (std::size_t j = 0; j <= last_idx; ++j) {
      const __m256d mine = _mm256_and_pd(
          served, _mm256_cmp_pd(idx, _mm256_set1_pd(static_cast<double>(j)), _CMP_EQ_OQ));
      acc[j] = _mm256_sub_epi64(acc[j], _mm256_castpd_si256(mine));
    }
  }
  for (std::size_t j = 0; j <= last_idx; ++j) {
    alignas(32) long long lanes[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc[j]);
    counts[j] += static_cast<int>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  }
  detail::count_served_last_scalar(top, top_idx, excl, all, last_signal, last_interference,
                                   last_idx, n4, n, noise, threshold, counts);
}

}  // namespace

namespace detail {

const KernelSet& avx2_set() {
  static const KernelSet set{"avx2",
                             &received_power_avx2,
                             &best_server_avx2,
                             &count_served_avx2,
                             &served_prefix_avx2,
                             &count_served_last_avx2};
  return set;
}

}  // namespace detail
}  // namespace uavbs::kernels
