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

#ifndef FILMGRAIN_DCT_H_
#define FILMGRAIN_DCT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "filmgrain/frame.h"

namespace filmgrain {

// Integer type-II/type-III DCT of size N with table
//   c[k][n] = round(s_k * cos(pi * (2n + 1) * k / (2N)) * 2^kTableBits),
// s_0 = sqrt(1/N), s_k = sqrt(2/N). Forward output is the orthonormal
// transform scaled by 2^kFractionBits; each 1-D pass ends in a rounded shift.
class IntegerDct {
 public:
  static constexpr int kTableBits = 14;
  static constexpr int kFractionBits = 4;

  explicit IntegerDct(int size);

  int size() const { return size_; }
  int32_t coefficient(int k, int n) const { return table_[k * size_ + n]; }

  // In-place-safe N x N transforms over row-major buffers.
  void Forward(std::span<const int32_t> samples,
               std::span<int32_t> coefficients) const;
  void Inverse(std::span<const int32_t> coefficients,
               std::span<int32_t> samples) const;

 private:
  int size_;
  std::vector<int32_t> table_;       // [k][n]
  std::vector<int32_t> transposed_;  // [n][k]
};

const IntegerDct& Dct64();
const IntegerDct& Dct8();

inline constexpr int kPatternSize = 64;

// Coefficient (x, y): x is the horizontal frequency index, y the vertical.
using CoefficientPlane = Plane<int32_t>;

CoefficientPlane ForwardDct64(const SignedPlane& block);
// Output saturates to int16.
SignedPlane InverseDct64(const CoefficientPlane& coefficients);

// Zeroes every coefficient with x > h_cutoff or y > v_cutoff.
CoefficientPlane LowPassFilter(const CoefficientPlane& coefficients,
                               int h_cutoff, int v_cutoff);

}  // namespace filmgrain

#endif  // FILMGRAIN_DCT_H_
