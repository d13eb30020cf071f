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

#include <cstdlib>
#include <string_view>

#include "uavbs/kernels/kernels.hpp"

namespace uavbs::kernels {

#if defined(UAVBS_HAVE_AVX2)
namespace detail {
const KernelSet& avx2_set();
}
#endif

const KernelSet* avx2() {
#if defined(UAVBS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* forced = std::getenv("UAVBS_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const KernelSet* simd = avx2()) return *simd;
    return scalar();
  }();
  return chosen;
}

}  // namespace uavbs::kernels
