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

#include <random>

#include <gtest/gtest.h>

#include "filmgrain/common.h"

namespace filmgrain::dsp {
namespace {

uint64_t NaiveSsd(const uint8_t* a, ptrdiff_t as, const uint8_t* b, ptrdiff_t bs,
                  int w, int h) {
  uint64_t sum = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int d = int{a[y * as + x]} - int{b[y * bs + x]};
      sum += static_cast<uint64_t>(d * d);
    }
  }
  return sum;
}

class KernelTest : public ::testing::TestWithParam<SimdLevel> {
 protected:
  void SetUp() override {
    if (!IsSupported(GetParam())) GTEST_SKIP() << "CPU lacks this kernel set";
  }
  const Kernels& kernels() const { return GetKernels(GetParam()); }
};

TEST_P(KernelTest, ReportsItsLevel) { EXPECT_EQ(kernels().level, GetParam()); }

TEST_P(KernelTest, BlockSsdMatchesNaive) {
  std::mt19937 rng(1);
  std::vector<uint8_t> a(80 * 40), b(80 * 40);
  for (auto& v : a) v = static_cast<uint8_t>(rng());
  for (auto& v : b) v = static_cast<uint8_t>(rng());
  for (int w : {1, 7, 8, 15, 16, 17, 31, 32, 33, 64}) {
    for (int h : {1, 3, 16}) {
      ASSERT_EQ(kernels().block_ssd(a.data() + 3, 80, b.data() + 5, 80, w, h),
                NaiveSsd(a.data() + 3, 80, b.data() + 5, 80, w, h))
          << w << "x" << h;
    }
  }
  // Extreme differences must not overflow the per-row accumulation.
  std::vector<uint8_t> zeros(64 * 64, 0), full(64 * 64, 255);
  EXPECT_EQ(kernels().block_ssd(zeros.data(), 64, full.data(), 64, 64, 64),
            uint64_t{64} * 64 * 255 * 255);
}

TEST_P(KernelTest, MatmulShiftMatchesNaive) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int32_t> big(-(1 << 20), 1 << 20);
  for (int n : {4, 8, 12, 64}) {
    for (int shift : {0, 1, 10, 14, 18}) {
      const int rows = 5;
      std::vector<int32_t> in(rows * n), m(n * n), out(rows * n);
      for (auto& v : in) v = big(rng);
      for (auto& v : m) v = big(rng) / 64;
      kernels().matmul_shift(in.data(), rows, n, m.data(), shift, out.data());
      for (int r = 0; r < rows; ++r) {
        for (int k = 0; k < n; ++k) {
          int64_t acc = 0;
          for (int j = 0; j < n; ++j) acc += int64_t{in[r * n + j]} * m[j * n + k];
          const int64_t expected = RoundShift(acc, shift);
          if (expected < INT32_MIN || expected > INT32_MAX) continue;
          ASSERT_EQ(out[r * n + k], expected) << "n=" << n << " shift=" << shift;
        }
      }
    }
  }
}

TEST_P(KernelTest, AddGrainRowClips) {
  std::mt19937 rng(3);
  for (int count : {1, 15, 16, 31, 32, 33, 100}) {
    std::vector<uint8_t> src(count), dst(count);
    std::vector<int16_t> grain(count);
    for (auto& v : src) v = static_cast<uint8_t>(rng());
    for (auto& v : grain) v = static_cast<int16_t>(static_cast<int>(rng() % 1200) - 600);
    kernels().add_grain_row(src.data(), grain.data(), dst.data(), count);
    for (int i = 0; i < count; ++i) {
      ASSERT_EQ(dst[i], Clip3(0, 255, int{src[i]} + grain[i]));
    }
  }
}

TEST_P(KernelTest, AgreesWithScalarOnRandomInputs) {
  const Kernels& scalar = GetKernels(SimdLevel::kScalar);
  std::mt19937 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 * (1 + static_cast<int>(rng() % 16));
    const int rows = 1 + static_cast<int>(rng() % 8);
    const int shift = static_cast<int>(rng() % 20);
    std::vector<int32_t> in(rows * n), m(n * n), a(rows * n), b(rows * n);
    for (auto& v : in) v = static_cast<int32_t>(rng() % 65536) - 32768;
    for (auto& v : m) v = static_cast<int32_t>(rng() % 32768) - 16384;
    scalar.matmul_shift(in.data(), rows, n, m.data(), shift, a.data());
    kernels().matmul_shift(in.data(), rows, n, m.data(), shift, b.data());
    ASSERT_EQ(a, b);
  }
}

INSTANTIATE_TEST_SUITE_P(AllLevels, KernelTest,
                         ::testing::Values(SimdLevel::kScalar, SimdLevel::kAvx2),
                         [](const auto& info) {
                           return std::string(SimdLevelName(info.param));
                         });

TEST(DispatchTest, ScalarAlwaysSupported) {
  EXPECT_TRUE(IsSupported(SimdLevel::kScalar));
  EXPECT_EQ(GetKernels(SimdLevel::kScalar).level, SimdLevel::kScalar);
}

TEST(DispatchTest, ActiveLevelCanBeSwitched) {
  const SimdLevel original = GetKernels().level;
  SetActiveSimdLevel(SimdLevel::kScalar);
  EXPECT_EQ(GetKernels().level, SimdLevel::kScalar);
  if (IsSupported(SimdLevel::kAvx2)) {
    SetActiveSimdLevel(SimdLevel::kAvx2);
    EXPECT_EQ(GetKernels().level, SimdLevel::kAvx2);
  }
  SetActiveSimdLevel(original);
}

}  // namespace
}  // namespace filmgrain::dsp
