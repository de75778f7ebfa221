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

#include "filmgrain/proxy_codec.h"

#include <cmath>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "filmgrain/grain_synthesis.h"
#include "filmgrain/metrics.h"
#include "test_util.h"

namespace filmgrain {
namespace {

Frame RoundTrip(const Frame& frame, int q) {
  ProxyCodecConfig config;
  config.quant_step = q;
  return ProxyDecode(ProxyEncode(frame, config));
}

Frame Smooth(int width, int height) {
  Frame f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      f.luma().at(x, y) =
          static_cast<uint8_t>(128 + 20 * std::sin(x / 40.0) * std::cos(y / 33.0));
    }
  }
  return f;
}

TEST(ProxyCodecTest, UnitStepIsNearLossless) {
  std::mt19937 rng(111);
  const Frame f = testing::RandomFrame(64, 48, rng);
  const Frame out = RoundTrip(f, 1);
  for (int c = 0; c < 3; ++c) {
    for (size_t i = 0; i < f.plane(c).samples().size(); ++i) {
      ASSERT_LE(std::abs(int{f.plane(c).samples()[i]} - out.plane(c).samples()[i]), 1);
    }
  }
}

TEST(ProxyCodecTest, FlatFramesAreExactAtAnyStep) {
  for (int q : {1, 2, 16, 64, 255}) {
    for (int value : {0, 17, 128, 255}) {
      const Frame f(40, 24, static_cast<uint8_t>(value));
      EXPECT_EQ(RoundTrip(f, q), f) << q << " " << value;
    }
  }
}

TEST(ProxyCodecTest, BitsDecreaseWithStep) {
  std::mt19937 rng(113);
  const Frame f = testing::AddLumaNoise(Smooth(128, 96), 6.0, rng);
  uint64_t previous = UINT64_MAX;
  double previous_psnr = 1000;
  for (int q : {1, 4, 16, 64}) {
    ProxyCodecConfig config;
    config.quant_step = q;
    const ProxyStream stream = ProxyEncode(f, config);
    EXPECT_LT(stream.bit_estimate, previous) << q;
    previous = stream.bit_estimate;
    const double psnr = Psnr(f, ProxyDecode(stream)).y;
    EXPECT_LT(psnr, previous_psnr);
    previous_psnr = psnr;
  }
}

TEST(ProxyCodecTest, NonMultipleOfEightSizes) {
  std::mt19937 rng(115);
  const Frame f = testing::RandomFrame(30, 18, rng);
  const Frame out = RoundTrip(f, 1);
  EXPECT_EQ(out.width(), 30);
  EXPECT_EQ(out.height(), 18);
  EXPECT_GT(Psnr(f, out).y, 45.0);
}

TEST(ProxyCodecTest, CoarseStepRemovesGrain) {
  const Frame clean = Smooth(256, 192);
  const Frame grainy = ApplyGrain(clean, testing::SingleIntervalParams(16, 12, 12),
                                  *SharedDatabase(1001), 0,
                                  SynthesisConfig{.master_seed = 1001});
  const double before = GrainBandEnergy(grainy.luma());
  const double after = GrainBandEnergy(RoundTrip(grainy, 64).luma());
  EXPECT_LT(after, 0.2 * before);
}

TEST(ProxyCodecTest, DeterministicAcrossThreads) {
  std::mt19937 rng(117);
  const Frame f = testing::RandomFrame(96, 64, rng);
  ProxyCodecConfig config;
  config.quant_step = 12;
  const ProxyStream a = ProxyEncode(f, config);
  config.threads = 3;
  const ProxyStream b = ProxyEncode(f, config);
  EXPECT_EQ(a.levels, b.levels);
  EXPECT_EQ(a.bit_estimate, b.bit_estimate);
  EXPECT_EQ(ProxyDecode(a), ProxyDecode(b));
}

TEST(ProxyCodecTest, BlockBitsGrowWithContent) {
  int32_t zero[64] = {};
  int32_t busy[64];
  for (int i = 0; i < 64; ++i) busy[i] = (i % 3) - 1 + (i == 0 ? 40 : 0);
  EXPECT_LT(EstimateBlockBits(zero), EstimateBlockBits(busy));
}

TEST(ProxyCodecTest, RejectsBadStep) {
  ProxyCodecConfig config;
  config.quant_step = 0;
  EXPECT_THROW(config.Validate(), Error);
  EXPECT_THROW(ProxyEncode(Frame(8, 8), config), Error);
}

}  // namespace
}  // namespace filmgrain
