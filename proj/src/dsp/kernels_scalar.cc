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

#include <algorithm>

#include "filmgrain/common.h"
#include "filmgrain/dsp/dsp.h"

namespace filmgrain::dsp {
namespace {

uint64_t BlockSsd_C(const uint8_t* a, ptrdiff_t a_stride, const uint8_t* b,
                    ptrdiff_t b_stride, int width, int height) {
  uint64_t sum = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int d = int{a[x]} - int{b[x]};
      sum += static_cast<uint64_t>(d * d);
    }
    a += a_stride;
    b += b_stride;
  }
  return sum;
}

void MatMulShift_C(const int32_t* in, int rows, int n, const int32_t* matrix,
                   int shift, int32_t* out) {
  for (int r = 0; r < rows; ++r) {
    const int32_t* src = in + static_cast<ptrdiff_t>(r) * n;
    int32_t* dst = out + static_cast<ptrdiff_t>(r) * n;
    for (int k = 0; k < n; ++k) {
      int64_t acc = 0;
      for (int j = 0; j < n; ++j) {
        acc += int64_t{src[j]} * matrix[static_cast<ptrdiff_t>(j) * n + k];
      }
      dst[k] = static_cast<int32_t>(RoundShift(acc, shift));
    }
  }
}

void AddGrainRow_C(const uint8_t* src, const int16_t* grain, uint8_t* dst,
                   int count) {
  for (int i = 0; i < count; ++i) {
    dst[i] = static_cast<uint8_t>(Clip3(0, 255, int{src[i]} + grain[i]));
  }
}

}  // namespace

namespace internal {
const Kernels kScalarKernels = {
    SimdLevel::kScalar,
    BlockSsd_C,
    MatMulShift_C,
    AddGrainRow_C,
};
}  // namespace internal

}  // namespace filmgrain::dsp
