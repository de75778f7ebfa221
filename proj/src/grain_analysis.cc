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

#include "filmgrain/grain_analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "filmgrain/parallel.h"

namespace filmgrain {
namespace {

constexpr int kTileSize = 64;
constexpr int kAnalysisBlock = 8;
// Interior of an 8x8 block: rows/columns 1..6.
constexpr int kInteriorFirst = 1;
constexpr int kInteriorLast = 6;

struct LagSums {
  int64_t ab = 0;
  int64_t a = 0;
  int64_t b = 0;
  int64_t n = 0;
};

struct FeatureAccumulator {
  int64_t sum = 0;
  int64_t sum_sq = 0;
  int64_t count = 0;
  std::array<LagSums, kCorrelationLags> horizontal{};
  std::array<LagSums, kCorrelationLags> vertical{};

  void AddWindow(const SignedPlane& plane, int x0, int y0) {
    for (int r = kInteriorFirst; r <= kInteriorLast; ++r) {
      const int16_t* row = plane.Row(y0 + r) + x0;
      for (int c = kInteriorFirst; c <= kInteriorLast; ++c) {
        const int64_t s = row[c];
        sum += s;
        sum_sq += s * s;
        ++count;
        for (int d = 1; d <= kCorrelationLags; ++d) {
          if (c + d <= kInteriorLast) {
            const int64_t t = row[c + d];
            LagSums& h = horizontal[d - 1];
            h.ab += s * t;
            h.a += s;
            h.b += t;
            ++h.n;
          }
          if (r + d <= kInteriorLast) {
            const int64_t t = plane.Row(y0 + r + d)[x0 + c];
            LagSums& v = vertical[d - 1];
            v.ab += s * t;
            v.a += s;
            v.b += t;
            ++v.n;
          }
        }
      }
    }
  }

  // Returns false when the interior samples have no variance.
  bool Finish(CorrelationFeatures& out) const {
    if (count == 0) return false;
    const double mean = static_cast<double>(sum) / count;
    const double variance = static_cast<double>(sum_sq) / count - mean * mean;
    if (!(variance > 1e-9)) return false;
    auto correlation = [&](const LagSums& s) {
      const double covariance =
          (static_cast<double>(s.ab) - mean * static_cast<double>(s.a) -
           mean * static_cast<double>(s.b)) /
              static_cast<double>(s.n) +
          mean * mean;
      return covariance / variance;
    };
    for (int d = 0; d < kCorrelationLags; ++d) {
      out[d] = correlation(horizontal[d]);
      out[kCorrelationLags + d] = correlation(vertical[d]);
    }
    return true;
  }
};

void RequireAnalyzableSize(const ResidualFrame& residual) {
  if (residual.width() < kTileSize || residual.height() < kTileSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "film grain analysis needs at least one 64x64 tile, frame is " +
                    std::to_string(residual.width()) + "x" +
                    std::to_string(residual.height()) +
                    "; skip analysis for this frame");
  }
}

}  // namespace

void AnalysisConfig::Validate() const {
  if (max_intervals < 1 || max_intervals > kMaxIntervals) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_intervals must be in [1,256], got " +
                    std::to_string(max_intervals));
  }
  if (min_log2_scale_factor < 0 || max_log2_scale_factor > 15 ||
      min_log2_scale_factor > max_log2_scale_factor) {
    throw Error(ErrorCode::kInvalidArgument, "invalid log2 scale factor range");
  }
}

ResidualFrame ComputeResidual(const Frame& original, const Frame& denoised) {
  RequireSameGeometry(original, denoised, "residual");
  ResidualFrame residual{SignedPlane(original.width(), original.height())};
  const auto a = original.luma().samples();
  const auto b = denoised.luma().samples();
  auto out = residual.luma_residual.samples();
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<int16_t>(int{a[i]} - int{b[i]});
  }
  return residual;
}

Plane<double> MeanDctSpectrum(const ResidualFrame& residual) {
  RequireAnalyzableSize(residual);
  Plane<double> spectrum(kTileSize, kTileSize, 0.0);
  const int tiles_x = residual.width() / kTileSize;
  const int tiles_y = residual.height() / kTileSize;
  const double scale = std::ldexp(1.0, -IntegerDct::kFractionBits);
  std::vector<int32_t> tile(kTileSize * kTileSize);
  std::vector<int32_t> coefficients(tile.size());
  for (int ty = 0; ty < tiles_y; ++ty) {
    for (int tx = 0; tx < tiles_x; ++tx) {
      for (int y = 0; y < kTileSize; ++y) {
        const int16_t* row =
            residual.luma_residual.Row(ty * kTileSize + y) + tx * kTileSize;
        std::copy_n(row, kTileSize, tile.begin() + y * kTileSize);
      }
      Dct64().Forward(tile, coefficients);
      auto out = spectrum.samples();
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] += std::abs(coefficients[i]) * scale;
      }
    }
  }
  for (double& v : spectrum.samples()) v /= tiles_x * tiles_y;
  return spectrum;
}

CorrelationFeatures MeasureCorrelationFeatures(const SignedPlane& residual) {
  FeatureAccumulator acc;
  for (int y = 0; y + kAnalysisBlock <= residual.height(); y += kAnalysisBlock) {
    for (int x = 0; x + kAnalysisBlock <= residual.width(); x += kAnalysisBlock) {
      acc.AddWindow(residual, x, y);
    }
  }
  CorrelationFeatures features{};
  acc.Finish(features);
  return features;
}

GrainAnalyzer::GrainAnalyzer(
    std::shared_ptr<const GrainPatternDatabase> database, AnalysisConfig config)
    : database_(std::move(database)), config_(config) {
  config_.Validate();
  gains_ = MeasureUnitGains(*database_, config_.threads);
  ParallelFor(kCutoffCount * kCutoffCount, config_.threads, [&](int index) {
    const SignedPlane& pattern =
        database_->pattern(kMinCutoff + index / kCutoffCount,
                           kMinCutoff + index % kCutoffCount);
    FeatureAccumulator acc;
    for (int y = 0; y <= kMaxGrainOffset; ++y) {
      for (int x = 0; x <= kMaxGrainOffset; ++x) acc.AddWindow(pattern, x, y);
    }
    templates_[index].fill(0.0);
    acc.Finish(templates_[index]);
  });
}

const CorrelationFeatures& GrainAnalyzer::correlation_template(
    int h_cutoff, int v_cutoff) const {
  database_->pattern(h_cutoff, v_cutoff);  // range check
  return templates_[(h_cutoff - kMinCutoff) * kCutoffCount +
                    (v_cutoff - kMinCutoff)];
}

CutoffPair GrainAnalyzer::EstimateCutoffs(const ResidualFrame& residual) const {
  RequireAnalyzableSize(residual);
  FeatureAccumulator acc;
  const SignedPlane& plane = residual.luma_residual;
  for (int y = 0; y + kAnalysisBlock <= plane.height(); y += kAnalysisBlock) {
    for (int x = 0; x + kAnalysisBlock <= plane.width(); x += kAnalysisBlock) {
      acc.AddWindow(plane, x, y);
    }
  }
  CorrelationFeatures measured{};
  if (!acc.Finish(measured)) return {kMinCutoff, kMinCutoff};

  CutoffPair best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int index = 0; index < kCutoffCount * kCutoffCount; ++index) {
    double distance = 0.0;
    for (size_t k = 0; k < measured.size(); ++k) {
      const double d = templates_[index][k] - measured[k];
      distance += d * d;
    }
    if (distance < best_distance) {
      best_distance = distance;
      best = {kMinCutoff + index / kCutoffCount,
              kMinCutoff + index % kCutoffCount};
    }
  }
  return best;
}

FilmGrainParams GrainAnalyzer::EstimateIntensityModel(
    const Frame& denoised, const ResidualFrame& residual, CutoffPair cutoffs,
    int max_intervals) const {
  if (denoised.width() != residual.width() ||
      denoised.height() != residual.height()) {
    throw Error(ErrorCode::kGeometry,
                "denoised frame and residual differ in size");
  }
  if (max_intervals < 1 || max_intervals > kMaxIntervals) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_intervals must be in [1,256], got " +
                    std::to_string(max_intervals));
  }
  database_->pattern(cutoffs.h_cutoff, cutoffs.v_cutoff);  // range check

  std::vector<int64_t> block_count(max_intervals, 0);
  std::vector<double> std_sum(max_intervals, 0.0);
  int64_t total_blocks = 0;
  const SamplePlane& luma = denoised.luma();
  for (int y = 0; y < luma.height(); y += kAnalysisBlock) {
    for (int x = 0; x < luma.width(); x += kAnalysisBlock) {
      const int average = BlockAverage(luma, x, y, kAnalysisBlock);
      const int bin = average * max_intervals / 256;
      ++block_count[bin];
      std_sum[bin] += BlockStdDev(residual.luma_residual, x, y, kAnalysisBlock);
      ++total_blocks;
    }
  }

  struct Bin {
    int index;
    double mean_std;
  };
  std::vector<Bin> bins;
  for (int b = 0; b < max_intervals; ++b) {
    if (block_count[b] == 0 ||
        static_cast<double>(block_count[b]) <
            config_.min_bin_occupancy * static_cast<double>(total_blocks)) {
      continue;
    }
    bins.push_back({b, std_sum[b] / static_cast<double>(block_count[b])});
  }
  if (bins.empty()) return FilmGrainParams::Cancelled();

  const double gain = gains_.gain(cutoffs.h_cutoff, cutoffs.v_cutoff);
  auto scaling_at = [&](const Bin& bin, int log2_scale) {
    return static_cast<int32_t>(
        std::lround(bin.mean_std * std::ldexp(1.0, log2_scale) / gain));
  };
  int log2_scale = config_.min_log2_scale_factor;
  for (int l = config_.max_log2_scale_factor;
       l >= config_.min_log2_scale_factor; --l) {
    const bool fits = std::all_of(bins.begin(), bins.end(), [&](const Bin& bin) {
      return scaling_at(bin, l) <= 255;
    });
    if (fits) {
      log2_scale = l;
      break;
    }
  }

  FilmGrainParams params;
  params.model_id = kFrequencyFilteringModel;
  params.blending_mode_id = kAdditiveBlending;
  params.log2_scale_factor = log2_scale;
  params.comp_model_present = {true, false, false};
  params.persistence_flag = false;
  ComponentModel& model = params.components[0];
  model.num_model_values = kModelValuesPerInterval;
  bool any_grain = false;
  for (const Bin& bin : bins) {
    IntensityInterval iv;
    iv.lower_bound = bin.index * 256 / max_intervals;
    iv.upper_bound = (bin.index + 1) * 256 / max_intervals - 1;
    iv.scaling_value = std::min(scaling_at(bin, log2_scale), 255);
    iv.h_cutoff = cutoffs.h_cutoff;
    iv.v_cutoff = cutoffs.v_cutoff;
    any_grain = any_grain || iv.scaling_value > 0;
    model.intervals.push_back(iv);
  }
  if (!any_grain) return FilmGrainParams::Cancelled();
  return params;
}

FilmGrainParams GrainAnalyzer::AnalyzeFrame(const Frame& original,
                                            const Frame& denoised) const {
  const ResidualFrame residual = ComputeResidual(original, denoised);
  const CutoffPair cutoffs = EstimateCutoffs(residual);
  return EstimateIntensityModel(denoised, residual, cutoffs,
                                config_.max_intervals);
}

std::shared_ptr<const GrainAnalyzer> SharedAnalyzer(uint32_t master_seed) {
  static std::mutex mutex;
  static std::map<uint32_t, std::shared_ptr<const GrainAnalyzer>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& entry = cache[master_seed];
  if (!entry) {
    entry = std::make_shared<const GrainAnalyzer>(SharedDatabase(master_seed));
  }
  return entry;
}

}  // namespace filmgrain
