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

#include "filmgrain/grain_synthesis.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "filmgrain/dct.h"
#include "filmgrain/dsp/dsp.h"
#include "filmgrain/parallel.h"
#include "filmgrain/prng.h"

namespace filmgrain {
namespace {

constexpr int kGaussianDraws = 12;
constexpr int kGaussianOffset = kGaussianDraws * 255 / 2;  // Irwin-Hall mean
constexpr int kGaussianShift = 2;

// Calibration frame for unit gains; 1024 blocks per cutoff pair.
constexpr int kCalibrationSize = 256;
constexpr int kCalibrationLog2Scale = 6;

void RequireCutoffInRange(int h_cutoff, int v_cutoff) {
  if (h_cutoff < kMinCutoff || h_cutoff > kMaxCutoff ||
      v_cutoff < kMinCutoff || v_cutoff > kMaxCutoff) {
    throw Error(ErrorCode::kOutOfRange,
                "cutoff pair (" + std::to_string(h_cutoff) + "," +
                    std::to_string(v_cutoff) + ") outside the [" +
                    std::to_string(kMinCutoff) + "," +
                    std::to_string(kMaxCutoff) + "] pattern database");
  }
}

void RequireSynthesizable(const FilmGrainParams& params) {
  if (params.model_id != kFrequencyFilteringModel) {
    throw Error(ErrorCode::kUnsupported,
                "film grain model_id " + std::to_string(params.model_id) +
                    " is not supported for synthesis");
  }
  if (params.blending_mode_id != kAdditiveBlending) {
    throw Error(ErrorCode::kUnsupported,
                "blending_mode_id " + std::to_string(params.blending_mode_id) +
                    " is not supported for synthesis");
  }
}

// Applies the 1-D boundary filter to every 8x8 block edge whose two
// neighbouring blocks are both flagged in |has_grain| (blocks_x wide).
void DeblockInPlace(SignedPlane& grain, const std::vector<uint8_t>& has_grain,
                    int blocks_x) {
  const int width = grain.width();
  const int height = grain.height();
  auto smooth = [](int16_t& l, int16_t& r) {
    const int32_t a = l;
    const int32_t b = r;
    l = static_cast<int16_t>(RoundDiv<int32_t>(2 * a + b, 3));
    r = static_cast<int16_t>(RoundDiv<int32_t>(a + 2 * b, 3));
  };
  for (int y = 0; y < height; ++y) {
    const int by = y / kGrainBlockSize;
    int16_t* row = grain.Row(y);
    for (int x = kGrainBlockSize; x < width; x += kGrainBlockSize) {
      const int bx = x / kGrainBlockSize;
      if (has_grain[by * blocks_x + bx - 1] && has_grain[by * blocks_x + bx]) {
        smooth(row[x - 1], row[x]);
      }
    }
  }
  for (int y = kGrainBlockSize; y < height; y += kGrainBlockSize) {
    const int by = y / kGrainBlockSize;
    int16_t* above = grain.Row(y - 1);
    int16_t* below = grain.Row(y);
    for (int x = 0; x < width; ++x) {
      const int bx = x / kGrainBlockSize;
      if (has_grain[(by - 1) * blocks_x + bx] && has_grain[by * blocks_x + bx]) {
        smooth(above[x], below[x]);
      }
    }
  }
}

}  // namespace

SignedPlane GenerateNoiseBlock(uint32_t seed) {
  SignedPlane block(kPatternSize, kPatternSize);
  Lcg rng(seed);
  for (int16_t& sample : block.samples()) {
    int sum = 0;
    for (int i = 0; i < kGaussianDraws; ++i) sum += static_cast<int>(rng.NextByte());
    sample = static_cast<int16_t>(RoundShift(sum - kGaussianOffset, kGaussianShift));
  }
  return block;
}

GrainPatternDatabase GrainPatternDatabase::Build(uint32_t master_seed,
                                                 int threads) {
  GrainPatternDatabase db;
  db.master_seed_ = master_seed;
  db.patterns_.resize(kCutoffCount * kCutoffCount);
  ParallelFor(kCutoffCount * kCutoffCount, threads, [&](int index) {
    const int h = kMinCutoff + index / kCutoffCount;
    const int v = kMinCutoff + index % kCutoffCount;
    const SignedPlane noise = GenerateNoiseBlock(DeriveSeed(
        master_seed, static_cast<uint32_t>(h), static_cast<uint32_t>(v)));
    CoefficientPlane coefficients = LowPassFilter(ForwardDct64(noise), h, v);
    coefficients.at(0, 0) = 0;
    db.patterns_[index] = InverseDct64(coefficients);
  });
  return db;
}

const SignedPlane& GrainPatternDatabase::pattern(int h_cutoff,
                                                 int v_cutoff) const {
  RequireCutoffInRange(h_cutoff, v_cutoff);
  return patterns_[(h_cutoff - kMinCutoff) * kCutoffCount +
                   (v_cutoff - kMinCutoff)];
}

std::shared_ptr<const GrainPatternDatabase> SharedDatabase(
    uint32_t master_seed) {
  static std::mutex mutex;
  static std::map<uint32_t, std::shared_ptr<const GrainPatternDatabase>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& entry = cache[master_seed];
  if (!entry) {
    entry = std::make_shared<const GrainPatternDatabase>(
        GrainPatternDatabase::Build(master_seed));
  }
  return entry;
}

std::optional<int> SelectInterval(const FilmGrainParams& params, int component,
                                  int block_average) {
  if (component < 0 || component > 2 ||
      !params.comp_model_present[component]) {
    throw Error(ErrorCode::kInvalidArgument,
                "component " + std::to_string(component) +
                    " has no grain model");
  }
  const auto& intervals = params.components[component].intervals;
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].lower_bound <= block_average &&
        block_average <= intervals[i].upper_bound) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

GrainOffset BlockGrainOffset(uint32_t master_seed, int frame_index,
                             int block_x, int block_y) {
  Lcg rng(DeriveSeed(master_seed ^ static_cast<uint32_t>(frame_index),
                     static_cast<uint32_t>(block_x),
                     static_cast<uint32_t>(block_y)));
  const int x = static_cast<int>(rng.Next() % (kMaxGrainOffset + 1));
  const int y = static_cast<int>(rng.Next() % (kMaxGrainOffset + 1));
  return {x, y};
}

SignedPlane SynthesizeGrainPlane(const Frame& decoded,
                                 const FilmGrainParams& params,
                                 const GrainPatternDatabase& database,
                                 int frame_index,
                                 const SynthesisConfig& config) {
  const SamplePlane& luma = decoded.luma();
  SignedPlane grain(luma.width(), luma.height());
  if (params.cancel_flag || !params.comp_model_present[0]) return grain;
  RequireSynthesizable(params);
  if (database.master_seed() != config.master_seed) {
    throw Error(ErrorCode::kInvalidArgument,
                "pattern database seed " + std::to_string(database.master_seed()) +
                    " does not match synthesis seed " +
                    std::to_string(config.master_seed));
  }
  if (params.log2_scale_factor < 0 || params.log2_scale_factor > 15) {
    throw Error(ErrorCode::kOutOfRange, "log2_scale_factor out of range");
  }
  for (const IntensityInterval& iv : params.components[0].intervals) {
    RequireCutoffInRange(iv.h_cutoff, iv.v_cutoff);
  }

  const int blocks_x = (luma.width() + kGrainBlockSize - 1) / kGrainBlockSize;
  const int blocks_y = (luma.height() + kGrainBlockSize - 1) / kGrainBlockSize;
  std::vector<uint8_t> has_grain(static_cast<size_t>(blocks_x) * blocks_y, 0);
  const auto& intervals = params.components[0].intervals;

  ParallelFor(blocks_y, config.threads, [&](int by) {
    const int y0 = by * kGrainBlockSize;
    const int rows = std::min(kGrainBlockSize, luma.height() - y0);
    for (int bx = 0; bx < blocks_x; ++bx) {
      const int x0 = bx * kGrainBlockSize;
      const int cols = std::min(kGrainBlockSize, luma.width() - x0);
      const std::optional<int> index =
          SelectInterval(params, 0, BlockAverage(luma, x0, y0, kGrainBlockSize));
      if (!index) continue;
      const IntensityInterval& iv = intervals[*index];
      const SignedPlane& pattern = database.pattern(iv.h_cutoff, iv.v_cutoff);
      const GrainOffset offset =
          BlockGrainOffset(config.master_seed, frame_index, bx, by);
      for (int r = 0; r < rows; ++r) {
        const int16_t* src = pattern.Row(offset.y + r) + offset.x;
        int16_t* dst = grain.Row(y0 + r) + x0;
        for (int c = 0; c < cols; ++c) {
          const int64_t scaled = RoundShift(int64_t{src[c]} * iv.scaling_value,
                                            params.log2_scale_factor);
          dst[c] = static_cast<int16_t>(Clip3<int64_t>(-32768, 32767, scaled));
        }
      }
      has_grain[static_cast<size_t>(by) * blocks_x + bx] = 1;
    }
  });

  if (config.deblocking_enabled) DeblockInPlace(grain, has_grain, blocks_x);
  return grain;
}

Frame ApplyGrain(const Frame& decoded, const FilmGrainParams& params,
                 const GrainPatternDatabase& database, int frame_index,
                 const SynthesisConfig& config) {
  if (params.cancel_flag || !params.comp_model_present[0]) return decoded;
  const SignedPlane grain =
      SynthesizeGrainPlane(decoded, params, database, frame_index, config);
  Frame out = decoded;
  const auto& kernels = dsp::GetKernels();
  for (int y = 0; y < decoded.height(); ++y) {
    kernels.add_grain_row(decoded.luma().Row(y), grain.Row(y),
                          out.luma().Row(y), decoded.width());
  }
  return out;
}

SignedPlane DeblockGrain(const SignedPlane& grain) {
  const int blocks_x = (grain.width() + kGrainBlockSize - 1) / kGrainBlockSize;
  const int blocks_y = (grain.height() + kGrainBlockSize - 1) / kGrainBlockSize;
  SignedPlane out = grain;
  DeblockInPlace(out,
                 std::vector<uint8_t>(static_cast<size_t>(blocks_x) * blocks_y, 1),
                 blocks_x);
  return out;
}

UnitGainTable MeasureUnitGains(const GrainPatternDatabase& database,
                               int threads) {
  UnitGainTable table;
  const Frame flat(kCalibrationSize, kCalibrationSize, 128);
  ParallelFor(kCutoffCount * kCutoffCount, threads, [&](int index) {
    FilmGrainParams params;
    params.log2_scale_factor = kCalibrationLog2Scale;
    params.comp_model_present = {true, false, false};
    IntensityInterval iv;
    iv.lower_bound = 0;
    iv.upper_bound = 255;
    iv.scaling_value = 1 << kCalibrationLog2Scale;
    iv.h_cutoff = kMinCutoff + index / kCutoffCount;
    iv.v_cutoff = kMinCutoff + index % kCutoffCount;
    params.components[0].intervals.push_back(iv);
    SynthesisConfig config;
    config.master_seed = database.master_seed();
    const SignedPlane grain =
        SynthesizeGrainPlane(flat, params, database, 0, config);
    double sum = 0.0;
    int count = 0;
    for (int y = 0; y < kCalibrationSize; y += kGrainBlockSize) {
      for (int x = 0; x < kCalibrationSize; x += kGrainBlockSize) {
        sum += BlockStdDev(grain, x, y, kGrainBlockSize);
        ++count;
      }
    }
    table.gains[index] = sum / count;
  });
  return table;
}

}  // namespace filmgrain
