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

#ifndef FILMGRAIN_GRAIN_ANALYSIS_H_
#define FILMGRAIN_GRAIN_ANALYSIS_H_

#include <array>
#include <memory>
#include <vector>

#include "filmgrain/dct.h"
#include "filmgrain/film_grain_params.h"
#include "filmgrain/frame.h"
#include "filmgrain/grain_synthesis.h"

namespace filmgrain {

struct AnalysisConfig {
  int max_intervals = 8;
  // Bins holding fewer than this fraction of all 8x8 blocks are dropped.
  double min_bin_occupancy = 0.005;
  int min_log2_scale_factor = 2;
  int max_log2_scale_factor = 7;
  int threads = 1;

  void Validate() const;
};

// original - denoised on luma.
struct ResidualFrame {
  SignedPlane luma_residual;

  int width() const { return luma_residual.width(); }
  int height() const { return luma_residual.height(); }
};

ResidualFrame ComputeResidual(const Frame& original, const Frame& denoised);

struct CutoffPair {
  int h_cutoff = kMinCutoff;
  int v_cutoff = kMinCutoff;

  bool operator==(const CutoffPair&) const = default;
};

// Mean absolute 64x64 DCT spectrum over the non-overlapping full tiles of the
// residual, in orthonormal units. Throws kInvalidArgument below 64x64.
Plane<double> MeanDctSpectrum(const ResidualFrame& residual);

// Lag-1..5 horizontal then vertical normalized correlations, measured on the
// 6x6 interior of every 8x8 block (edge rows/columns are what deblocking
// touches).
inline constexpr int kCorrelationLags = 5;
using CorrelationFeatures = std::array<double, 2 * kCorrelationLags>;

// Film grain analysis calibrated against one pattern database: each cutoff
// pair has a correlation template (from its pattern) and a unit gain (from
// synthesizing it), so estimates are in the synthesizer's own units.
class GrainAnalyzer {
 public:
  explicit GrainAnalyzer(std::shared_ptr<const GrainPatternDatabase> database,
                         AnalysisConfig config = {});

  // Cutoff pair whose pattern correlation template is nearest (least squares)
  // to the residual's. A residual with no variance yields (2, 2). Throws
  // kInvalidArgument when the residual is smaller than 64x64.
  CutoffPair EstimateCutoffs(const ResidualFrame& residual) const;

  // Stepwise intensity model: equal-width intensity bins over 8x8 block
  // averages of |denoised|, each scaled from the mean residual block standard
  // deviation in that bin. Returns cancelled params when nothing remains.
  FilmGrainParams EstimateIntensityModel(const Frame& denoised,
                                         const ResidualFrame& residual,
                                         CutoffPair cutoffs,
                                         int max_intervals) const;

  FilmGrainParams AnalyzeFrame(const Frame& original,
                               const Frame& denoised) const;

  const UnitGainTable& unit_gains() const { return gains_; }
  const CorrelationFeatures& correlation_template(int h_cutoff,
                                                  int v_cutoff) const;
  const GrainPatternDatabase& database() const { return *database_; }
  const AnalysisConfig& config() const { return config_; }

 private:
  std::shared_ptr<const GrainPatternDatabase> database_;
  AnalysisConfig config_;
  UnitGainTable gains_;
  std::array<CorrelationFeatures, kCutoffCount * kCutoffCount> templates_;
};

// Residual correlation features over 8x8 blocks at every 8-aligned position.
CorrelationFeatures MeasureCorrelationFeatures(const SignedPlane& residual);

// Process-wide analyzer per database seed.
std::shared_ptr<const GrainAnalyzer> SharedAnalyzer(uint32_t master_seed);

}  // namespace filmgrain

#endif  // FILMGRAIN_GRAIN_ANALYSIS_H_
