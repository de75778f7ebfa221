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

#include "filmgrain/dct.h"

#include <cmath>
#include <numbers>
#include <string>

#include "filmgrain/dsp/dsp.h"

namespace filmgrain {
namespace {

void Transpose(std::span<const int32_t> in, int n, std::span<int32_t> out) {
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) out[x * n + y] = in[y * n + x];
  }
}

void RequireSize(const IntegerDct& dct, size_t in_size, size_t out_size) {
  const size_t expected = static_cast<size_t>(dct.size()) * dct.size();
  if (in_size != expected || out_size != expected) {
    throw Error(ErrorCode::kGeometry,
                "DCT buffers must hold " + std::to_string(expected) +
                    " samples");
  }
}

}  // namespace

IntegerDct::IntegerDct(int size)
    : size_(size),
      table_(static_cast<size_t>(size) * size),
      transposed_(static_cast<size_t>(size) * size) {
  if (size <= 0 || size % 4 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "DCT size must be a positive multiple of 4");
  }
  const double scale = std::ldexp(1.0, kTableBits);
  for (int k = 0; k < size; ++k) {
    const double s = std::sqrt((k == 0 ? 1.0 : 2.0) / size);
    for (int n = 0; n < size; ++n) {
      const double c =
          s * std::cos(std::numbers::pi * (2 * n + 1) * k / (2.0 * size));
      table_[k * size + n] = static_cast<int32_t>(std::lround(c * scale));
    }
  }
  Transpose(table_, size, transposed_);
}

void IntegerDct::Forward(std::span<const int32_t> samples,
                         std::span<int32_t> coefficients) const {
  RequireSize(*this, samples.size(), coefficients.size());
  const auto& k = dsp::GetKernels();
  std::vector<int32_t> a(samples.size());
  std::vector<int32_t> b(samples.size());
  // Rows: a = X * C^T, keeping kFractionBits extra bits.
  k.matmul_shift(samples.data(), size_, size_, transposed_.data(),
                 kTableBits - kFractionBits, a.data());
  // Columns: (C * A)^T = A^T * C^T.
  Transpose(a, size_, b);
  k.matmul_shift(b.data(), size_, size_, transposed_.data(), kTableBits,
                 a.data());
  Transpose(a, size_, coefficients);
}

void IntegerDct::Inverse(std::span<const int32_t> coefficients,
                         std::span<int32_t> samples) const {
  RequireSize(*this, coefficients.size(), samples.size());
  const auto& k = dsp::GetKernels();
  std::vector<int32_t> a(coefficients.size());
  std::vector<int32_t> b(coefficients.size());
  k.matmul_shift(coefficients.data(), size_, size_, table_.data(), kTableBits,
                 a.data());
  Transpose(a, size_, b);
  k.matmul_shift(b.data(), size_, size_, table_.data(),
                 kTableBits + kFractionBits, a.data());
  Transpose(a, size_, samples);
}

const IntegerDct& Dct64() {
  static const IntegerDct dct(64);
  return dct;
}

const IntegerDct& Dct8() {
  static const IntegerDct dct(8);
  return dct;
}

CoefficientPlane ForwardDct64(const SignedPlane& block) {
  if (block.width() != kPatternSize || block.height() != kPatternSize) {
    throw Error(ErrorCode::kGeometry, "forward DCT expects a 64x64 block, got " +
                                          std::to_string(block.width()) + "x" +
                                          std::to_string(block.height()));
  }
  std::vector<int32_t> in(block.samples().begin(), block.samples().end());
  CoefficientPlane out(kPatternSize, kPatternSize);
  Dct64().Forward(in, out.samples());
  return out;
}

SignedPlane InverseDct64(const CoefficientPlane& coefficients) {
  if (coefficients.width() != kPatternSize ||
      coefficients.height() != kPatternSize) {
    throw Error(ErrorCode::kGeometry, "inverse DCT expects 64x64 coefficients");
  }
  std::vector<int32_t> samples(kPatternSize * kPatternSize);
  Dct64().Inverse(coefficients.samples(), samples);
  SignedPlane out(kPatternSize, kPatternSize);
  auto dst = out.samples();
  for (size_t i = 0; i < samples.size(); ++i) {
    dst[i] = static_cast<int16_t>(Clip3(-32768, 32767, samples[i]));
  }
  return out;
}

CoefficientPlane LowPassFilter(const CoefficientPlane& coefficients,
                               int h_cutoff, int v_cutoff) {
  const int max_index = coefficients.width() - 1;
  if (h_cutoff < 0 || h_cutoff > max_index || v_cutoff < 0 ||
      v_cutoff > coefficients.height() - 1) {
    throw Error(ErrorCode::kOutOfRange,
                "cutoff pair (" + std::to_string(h_cutoff) + "," +
                    std::to_string(v_cutoff) + ") outside [0," +
                    std::to_string(max_index) + "]");
  }
  CoefficientPlane out = coefficients;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (x > h_cutoff || y > v_cutoff) out.at(x, y) = 0;
    }
  }
  return out;
}

}  // namespace filmgrain
