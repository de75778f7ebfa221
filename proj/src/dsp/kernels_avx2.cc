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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "filmgrain/common.h"
#include "filmgrain/dsp/dsp.h"

namespace filmgrain::dsp {
namespace {

inline uint64_t HorizontalSum64(__m256i v) {
  const __m128i sum = _mm_add_epi64(_mm256_castsi256_si128(v),
                                    _mm256_extracti128_si256(v, 1));
  return static_cast<uint64_t>(_mm_cvtsi128_si64(sum)) +
         static_cast<uint64_t>(_mm_extract_epi64(sum, 1));
}

uint64_t BlockSsd_AVX2(const uint8_t* a, ptrdiff_t a_stride, const uint8_t* b,
                       ptrdiff_t b_stride, int width, int height) {
  __m256i total = _mm256_setzero_si256();
  uint64_t tail = 0;
  const int vector_width = width & ~15;
  for (int y = 0; y < height; ++y) {
    __m256i row_sum = _mm256_setzero_si256();
    for (int x = 0; x < vector_width; x += 16) {
      const __m256i va = _mm256_cvtepu8_epi16(
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + x)));
      const __m256i vb = _mm256_cvtepu8_epi16(
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + x)));
      const __m256i d = _mm256_sub_epi16(va, vb);
      row_sum = _mm256_add_epi32(row_sum, _mm256_madd_epi16(d, d));
    }
    // Widen once per row; a lane holds at most width/8 * 2 * 255^2.
    total = _mm256_add_epi64(
        total, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(row_sum)));
    total = _mm256_add_epi64(
        total, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(row_sum, 1)));
    for (int x = vector_width; x < width; ++x) {
      const int d = int{a[x]} - int{b[x]};
      tail += static_cast<uint64_t>(d * d);
    }
    a += a_stride;
    b += b_stride;
  }
  return HorizontalSum64(total) + tail;
}

// Round-half-away-from-zero arithmetic shift of four int64 lanes.
inline __m256i RoundShift64(__m256i v, __m128i shift, __m256i half) {
  const __m256i sign = _mm256_cmpgt_epi64(_mm256_setzero_si256(), v);
  const __m256i magnitude = _mm256_sub_epi64(_mm256_xor_si256(v, sign), sign);
  const __m256i shifted =
      _mm256_srl_epi64(_mm256_add_epi64(magnitude, half), shift);
  return _mm256_sub_epi64(_mm256_xor_si256(shifted, sign), sign);
}

// Packs four int64 lanes (known to fit int32) into the low 128 bits.
inline __m128i NarrowTo32(__m256i v) {
  const __m256i packed = _mm256_permutevar8x32_epi32(
      v, _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7));
  return _mm256_castsi256_si128(packed);
}

template <int kGroups>
inline void MatMulRowBlock(const int32_t* src, int n, const int32_t* matrix,
                           int k0, __m128i shift, __m256i half, bool do_shift,
                           int32_t* dst) {
  __m256i acc[kGroups];
  for (int g = 0; g < kGroups; ++g) acc[g] = _mm256_setzero_si256();
  for (int j = 0; j < n; ++j) {
    const __m256i x = _mm256_set1_epi64x(src[j]);
    const int32_t* m = matrix + static_cast<ptrdiff_t>(j) * n + k0;
    for (int g = 0; g < kGroups; ++g) {
      const __m256i coeff = _mm256_cvtepi32_epi64(
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(m + 4 * g)));
      acc[g] = _mm256_add_epi64(acc[g], _mm256_mul_epi32(x, coeff));
    }
  }
  for (int g = 0; g < kGroups; ++g) {
    const __m256i r = do_shift ? RoundShift64(acc[g], shift, half) : acc[g];
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + k0 + 4 * g),
                     NarrowTo32(r));
  }
}

void MatMulShift_AVX2(const int32_t* in, int rows, int n,
                      const int32_t* matrix, int shift, int32_t* out) {
  const bool do_shift = shift > 0;
  const __m128i shift_count = _mm_cvtsi32_si128(do_shift ? shift : 0);
  const __m256i half =
      _mm256_set1_epi64x(do_shift ? (int64_t{1} << (shift - 1)) : 0);
  for (int r = 0; r < rows; ++r) {
    const int32_t* src = in + static_cast<ptrdiff_t>(r) * n;
    int32_t* dst = out + static_cast<ptrdiff_t>(r) * n;
    int k0 = 0;
    for (; k0 + 16 <= n; k0 += 16) {
      MatMulRowBlock<4>(src, n, matrix, k0, shift_count, half, do_shift, dst);
    }
    for (; k0 < n; k0 += 4) {
      MatMulRowBlock<1>(src, n, matrix, k0, shift_count, half, do_shift, dst);
    }
  }
}

void AddGrainRow_AVX2(const uint8_t* src, const int16_t* grain, uint8_t* dst,
                      int count) {
  int i = 0;
  for (; i + 16 <= count; i += 16) {
    const __m256i s = _mm256_cvtepu8_epi16(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i)));
    const __m256i g =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(grain + i));
    const __m256i sum = _mm256_adds_epi16(s, g);
    const __m256i packed =
        _mm256_permute4x64_epi64(_mm256_packus_epi16(sum, sum), 0xD8);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i),
                     _mm256_castsi256_si128(packed));
  }
  for (; i < count; ++i) {
    dst[i] = static_cast<uint8_t>(Clip3(0, 255, int{src[i]} + grain[i]));
  }
}

}  // namespace

namespace internal {
const Kernels kAvx2Kernels = {
    SimdLevel::kAvx2,
    BlockSsd_AVX2,
    MatMulShift_AVX2,
    AddGrainRow_AVX2,
};
}  // namespace internal

}  // namespace filmgrain::dsp
