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

#ifndef FILMGRAIN_GRAIN_SYNTHESIS_H_
#define FILMGRAIN_GRAIN_SYNTHESIS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "filmgrain/film_grain_params.h"
#include "filmgrain/frame.h"

namespace filmgrain {

inline constexpr int kGrainBlockSize = 8;
// Offsets in [0, 56] keep an 8x8 read inside the 64x64 pattern.
inline constexpr int kMaxGrainOffset = 64 - kGrainBlockSize;

struct SynthesisConfig {
  uint32_t master_seed = 1;
  bool deblocking_enabled = true;
  int threads = 1;
};

// 64x64 block of approximately Gaussian integers: each sample is the sum of
// 12 LCG bytes minus their mean 1530, shifted right by 2 with rounding (zero
// mean, variance about 65535/16). Filled in raster order.
SignedPlane GenerateNoiseBlock(uint32_t seed);

// Immutable set of 13x13 low-pass grain patterns, one per cutoff pair.
class GrainPatternDatabase {
 public:
  static GrainPatternDatabase Build(uint32_t master_seed, int threads = 1);

  // Throws kOutOfRange for cutoffs outside [2, 14].
  const SignedPlane& pattern(int h_cutoff, int v_cutoff) const;

  uint32_t master_seed() const { return master_seed_; }
  size_t pattern_count() const { return patterns_.size(); }

 private:
  GrainPatternDatabase() = default;

  uint32_t master_seed_ = 0;
  std::vector<SignedPlane> patterns_;  // index (h - 2) * 13 + (v - 2)
};

// Process-wide cache; databases are built once per seed and shared.
std::shared_ptr<const GrainPatternDatabase> SharedDatabase(uint32_t master_seed);

// Lowest interval index whose [lower, upper] contains |block_average|.
// Throws kInvalidArgument if |component| is not present in |params|.
std::optional<int> SelectInterval(const FilmGrainParams& params, int component,
                                  int block_average);

// Offset of the 8x8 read window inside the pattern for one block.
struct GrainOffset {
  int x;
  int y;
};
GrainOffset BlockGrainOffset(uint32_t master_seed, int frame_index,
                             int block_x, int block_y);

// Adds luma grain to |decoded| per |params|. |database| must have been built
// with |config.master_seed|. Output depends only on the inputs, never on
// |config.threads|.
Frame ApplyGrain(const Frame& decoded, const FilmGrainParams& params,
                 const GrainPatternDatabase& database, int frame_index,
                 const SynthesisConfig& config = {});

// The grain contribution ApplyGrain would add before clipping.
SignedPlane SynthesizeGrainPlane(const Frame& decoded,
                                 const FilmGrainParams& params,
                                 const GrainPatternDatabase& database,
                                 int frame_index,
                                 const SynthesisConfig& config = {});

// Smooths the two samples either side of every 8x8 grain block edge:
// l' = round((2l + r) / 3), r' = round((l + 2r) / 3). Vertical edges first,
// then horizontal edges.
SignedPlane DeblockGrain(const SignedPlane& grain);

// Per cutoff pair, the mean within-8x8-block standard deviation of grain
// synthesized at unit scale (scaling_value == 2^log2_scale_factor) on a
// flat frame.
struct UnitGainTable {
  std::array<double, kCutoffCount * kCutoffCount> gains{};

  double gain(int h_cutoff, int v_cutoff) const {
    return gains[(h_cutoff - kMinCutoff) * kCutoffCount +
                 (v_cutoff - kMinCutoff)];
  }
};
UnitGainTable MeasureUnitGains(const GrainPatternDatabase& database,
                               int threads = 1);

}  // namespace filmgrain

#endif  // FILMGRAIN_GRAIN_SYNTHESIS_H_
