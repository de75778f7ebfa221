// Copyright 2026 The Filmgrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "filmgrain/dsp/dsp.h"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "filmgrain/common.h"

namespace filmgrain::dsp {
namespace {

SimdLevel DetectBestLevel() {
  const char* forced = std::getenv("FILMGRAIN_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return SimdLevel::kScalar;
  }
  if (IsSupported(SimdLevel::kAvx2)) return SimdLevel::kAvx2;
  return SimdLevel::kScalar;
}

std::atomic<const Kernels*>& ActiveKernels() {
  static std::atomic<const Kernels*> active{&GetKernels(DetectBestLevel())};
  return active;
}

}  // namespace

const char* SimdLevelName(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return "scalar";
    case SimdLevel::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool IsSupported(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return true;
    case SimdLevel::kAvx2:
#if defined(FILMGRAIN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const Kernels& GetKernels(SimdLevel level) {
  if (!IsSupported(level)) {
    throw Error(ErrorCode::kUnsupported,
                std::string("SIMD level ") + SimdLevelName(level) +
                    " is not available on this build/CPU");
  }
#if defined(FILMGRAIN_HAVE_AVX2)
  if (level == SimdLevel::kAvx2) return internal::kAvx2Kernels;
#endif
  return internal::kScalarKernels;
}

const Kernels& GetKernels() { return *ActiveKernels().load(); }

void SetActiveSimdLevel(SimdLevel level) {
  ActiveKernels().store(&GetKernels(level));
}

}  // namespace filmgrain::dsp
