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

#ifndef FILMGRAIN_DSP_DSP_H_
#define FILMGRAIN_DSP_DSP_H_

#include <cstddef>
#include <cstdint>

namespace filmgrain::dsp {

enum class SimdLevel { kScalar, kAvx2 };

// Inner-loop kernels. Every table entry must produce bit-identical results
// to the scalar reference for all inputs inside its documented domain.
struct Kernels {
  SimdLevel level;

  // Sum of squared differences over a width x height block of 8-bit samples.
  uint64_t (*block_ssd)(const uint8_t* a, ptrdiff_t a_stride,
                        const uint8_t* b, ptrdiff_t b_stride, int width,
                        int height);

  // out[r][k] = RoundShift(sum_j in[r][j] * matrix[j][k], shift) for an
  // n x n |matrix| and |rows| input rows, n a multiple of 4. Inputs and
  // matrix entries must fit in int32; accumulation is 64-bit.
  void (*matmul_shift)(const int32_t* in, int rows, int n,
                       const int32_t* matrix, int shift, int32_t* out);

  // dst[i] = clip(src[i] + grain[i], 0, 255).
  void (*add_grain_row)(const uint8_t* src, const int16_t* grain,
                        uint8_t* dst, int count);
};

const char* SimdLevelName(SimdLevel level);
bool IsSupported(SimdLevel level);

// The kernel table for |level|; throws kUnsupported when the build or CPU
// lacks it.
const Kernels& GetKernels(SimdLevel level);

// The active table. Defaults to the best supported level; the environment
// variable FILMGRAIN_SIMD=scalar forces the reference kernels.
const Kernels& GetKernels();
void SetActiveSimdLevel(SimdLevel level);

namespace internal {
extern const Kernels kScalarKernels;
#if defined(FILMGRAIN_HAVE_AVX2)
extern const Kernels kAvx2Kernels;
#endif
}  // namespace internal

}  // namespace filmgrain::dsp

#endif  // FILMGRAIN_DSP_DSP_H_
