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

#ifndef FILMGRAIN_METRICS_H_
#define FILMGRAIN_METRICS_H_

#include <array>

#include "filmgrain/frame.h"

namespace filmgrain {

// Reported for identical planes instead of +inf.
inline constexpr double kPsnrCap = 100.0;

struct PsnrResult {
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
  double yuv = 0.0;  // (6 Y + U + V) / 8
};

double PlanePsnr(const SamplePlane& reference, const SamplePlane& test);
PsnrResult Psnr(const Frame& reference, const Frame& test);

// Weighted combination used for every per-plane metric.
constexpr double CombineYuv(double y, double u, double v) {
  return (6.0 * y + u + v) / 8.0;
}

inline constexpr int kMsSsimScales = 5;
inline constexpr std::array<double, kMsSsimScales> kMsSsimWeights = {
    0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
inline constexpr int kMinMsSsimLuma = 176;

// Mean SSIM terms at one scale. contrast_structure is the combined term
// (2 s_xy + C2) / (s_x^2 + s_y^2 + C2) used in the product.
struct SsimTerms {
  double luminance = 0.0;
  double contrast = 0.0;
  double structure = 0.0;
  double contrast_structure = 0.0;
};

struct MsSsimPlaneResult {
  double score = 0.0;
  std::array<SsimTerms, kMsSsimScales> scales{};
};

// Five-scale SSIM with an 11x11 Gaussian window (sigma 1.5). Scales smaller
// than the window use a window truncated to the plane size.
MsSsimPlaneResult MsSsimPlane(const SamplePlane& reference,
                              const SamplePlane& test);

struct MsSsimResult {
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
  double yuv = 0.0;
};

// Throws kInvalidArgument when luma is smaller than 176x176.
MsSsimResult MsSsim(const Frame& reference, const Frame& test);

// sum_proposed / sum_default - 1. Throws kInvalidArgument unless
// sum_default > 0.
double DeltaT(double sum_proposed, double sum_default);

// High-frequency energy of |plane| - binomial-smoothed |plane|: sum of squared
// orthonormal 64x64 DCT coefficients with x > 16 or y > 16 over all full
// tiles, divided by the tile count.
inline constexpr int kGrainBandCutoff = 16;
double GrainBandEnergy(const SamplePlane& plane);

}  // namespace filmgrain

#endif  // FILMGRAIN_METRICS_H_
