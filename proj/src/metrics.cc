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

#include "filmgrain/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "filmgrain/dct.h"
#include "filmgrain/dsp/dsp.h"

namespace filmgrain {
namespace {

constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
constexpr double kC2 = (0.03 * 255) * (0.03 * 255);
constexpr double kC3 = kC2 / 2.0;
constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;

void RequireSameSize(const SamplePlane& a, const SamplePlane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kGeometry, "metric planes differ in size");
  }
}

struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  double at(int x, int y) const { return v[static_cast<size_t>(y) * width + x]; }
};

Image ToImage(const SamplePlane& plane) {
  Image img{plane.width(), plane.height(), {}};
  img.v.assign(plane.samples().begin(), plane.samples().end());
  return img;
}

Image Downsample(const Image& in) {
  Image out{in.width / 2, in.height / 2, {}};
  out.v.resize(static_cast<size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.v[static_cast<size_t>(y) * out.width + x] =
          (in.at(2 * x, 2 * y) + in.at(2 * x + 1, 2 * y) +
           in.at(2 * x, 2 * y + 1) + in.at(2 * x + 1, 2 * y + 1)) / 4.0;
    }
  }
  return out;
}

std::vector<double> GaussianKernel(int length) {
  std::vector<double> k(length);
  const double center = (length - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < length; ++i) {
    const double d = i - center;
    k[i] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    sum += k[i];
  }
  for (double& w : k) w /= sum;
  return k;
}

// 'valid' separable filtering of f(a, b) products.
template <typename F>
Image Filter(const Image& a, const Image& b, const std::vector<double>& kx,
             const std::vector<double>& ky, F f) {
  const int lx = static_cast<int>(kx.size());
  const int ly = static_cast<int>(ky.size());
  const int ow = a.width - lx + 1;
  const int oh = a.height - ly + 1;
  std::vector<double> horizontal(static_cast<size_t>(ow) * a.height);
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < lx; ++i) acc += kx[i] * f(a.at(x + i, y), b.at(x + i, y));
      horizontal[static_cast<size_t>(y) * ow + x] = acc;
    }
  }
  Image out{ow, oh, std::vector<double>(static_cast<size_t>(ow) * oh)};
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < ly; ++i) {
        acc += ky[i] * horizontal[static_cast<size_t>(y + i) * ow + x];
      }
      out.v[static_cast<size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

SsimTerms ScaleTerms(const Image& a, const Image& b) {
  const auto kx = GaussianKernel(std::min(kWindow, a.width));
  const auto ky = GaussianKernel(std::min(kWindow, a.height));
  const Image mu_a = Filter(a, b, kx, ky, [](double x, double) { return x; });
  const Image mu_b = Filter(a, b, kx, ky, [](double, double y) { return y; });
  const Image aa = Filter(a, b, kx, ky, [](double x, double) { return x * x; });
  const Image bb = Filter(a, b, kx, ky, [](double, double y) { return y * y; });
  const Image ab = Filter(a, b, kx, ky, [](double x, double y) { return x * y; });

  SsimTerms terms;
  const size_t n = mu_a.v.size();
  for (size_t i = 0; i < n; ++i) {
    const double ma = mu_a.v[i];
    const double mb = mu_b.v[i];
    const double var_a = std::max(0.0, aa.v[i] - ma * ma);
    const double var_b = std::max(0.0, bb.v[i] - mb * mb);
    const double cov = ab.v[i] - ma * mb;
    const double sd_a = std::sqrt(var_a);
    const double sd_b = std::sqrt(var_b);
    terms.luminance += (2 * ma * mb + kC1) / (ma * ma + mb * mb + kC1);
    terms.contrast += (2 * sd_a * sd_b + kC2) / (var_a + var_b + kC2);
    terms.structure += (cov + kC3) / (sd_a * sd_b + kC3);
    terms.contrast_structure += (2 * cov + kC2) / (var_a + var_b + kC2);
  }
  terms.luminance /= n;
  terms.contrast /= n;
  terms.structure /= n;
  terms.contrast_structure /= n;
  return terms;
}

}  // namespace

double PlanePsnr(const SamplePlane& reference, const SamplePlane& test) {
  RequireSameSize(reference, test);
  const uint64_t sse = dsp::GetKernels().block_ssd(
      reference.Row(0), reference.width(), test.Row(0), test.width(),
      reference.width(), reference.height());
  if (sse == 0) return kPsnrCap;
  const double mse = static_cast<double>(sse) /
                     (static_cast<double>(reference.width()) * reference.height());
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

PsnrResult Psnr(const Frame& reference, const Frame& test) {
  RequireSameGeometry(reference, test, "psnr");
  PsnrResult r;
  r.y = PlanePsnr(reference.luma(), test.luma());
  r.u = PlanePsnr(reference.cb(), test.cb());
  r.v = PlanePsnr(reference.cr(), test.cr());
  r.yuv = CombineYuv(r.y, r.u, r.v);
  return r;
}

MsSsimPlaneResult MsSsimPlane(const SamplePlane& reference,
                              const SamplePlane& test) {
  RequireSameSize(reference, test);
  if (reference.width() < (1 << (kMsSsimScales - 1)) ||
      reference.height() < (1 << (kMsSsimScales - 1))) {
    throw Error(ErrorCode::kInvalidArgument,
                "MS-SSIM plane too small for five scales");
  }
  MsSsimPlaneResult result;
  Image a = ToImage(reference);
  Image b = ToImage(test);
  double score = 1.0;
  for (int s = 0; s < kMsSsimScales; ++s) {
    if (s > 0) {
      a = Downsample(a);
      b = Downsample(b);
    }
    result.scales[s] = ScaleTerms(a, b);
    // Negative mean structure terms are clamped before the fractional power.
    const double cs = std::max(0.0, result.scales[s].contrast_structure);
    score *= std::pow(cs, kMsSsimWeights[s]);
  }
  score *= std::pow(std::max(0.0, result.scales.back().luminance),
                    kMsSsimWeights.back());
  result.score = std::clamp(score, 0.0, 1.0);
  return result;
}

MsSsimResult MsSsim(const Frame& reference, const Frame& test) {
  RequireSameGeometry(reference, test, "ms-ssim");
  if (reference.width() < kMinMsSsimLuma || reference.height() < kMinMsSsimLuma) {
    throw Error(ErrorCode::kInvalidArgument,
                "MS-SSIM needs luma of at least 176x176, got " +
                    std::to_string(reference.width()) + "x" +
                    std::to_string(reference.height()));
  }
  MsSsimResult r;
  r.y = MsSsimPlane(reference.luma(), test.luma()).score;
  r.u = MsSsimPlane(reference.cb(), test.cb()).score;
  r.v = MsSsimPlane(reference.cr(), test.cr()).score;
  r.yuv = CombineYuv(r.y, r.u, r.v);
  return r;
}

double DeltaT(double sum_proposed, double sum_default) {
  if (!(sum_default > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "default-toolchain time sum must be positive");
  }
  return sum_proposed / sum_default - 1.0;
}

double GrainBandEnergy(const SamplePlane& plane) {
  const int width = plane.width();
  const int height = plane.height();
  const int tiles_x = width / kPatternSize;
  const int tiles_y = height / kPatternSize;
  if (tiles_x == 0 || tiles_y == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "grain-band energy needs at least one 64x64 tile");
  }
  // Separable [1 4 6 4 1] / 16 with edge replication, in 1/256 units.
  static constexpr int kTaps[5] = {1, 4, 6, 4, 1};
  std::vector<int32_t> horizontal(static_cast<size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const uint8_t* row = plane.Row(y);
    for (int x = 0; x < width; ++x) {
      int32_t acc = 0;
      for (int t = 0; t < 5; ++t) acc += kTaps[t] * row[Clip3(0, width - 1, x + t - 2)];
      horizontal[static_cast<size_t>(y) * width + x] = acc;
    }
  }
  SignedPlane high(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int32_t acc = 0;
      for (int t = 0; t < 5; ++t) {
        acc += kTaps[t] *
               horizontal[static_cast<size_t>(Clip3(0, height - 1, y + t - 2)) * width + x];
      }
      high.at(x, y) = static_cast<int16_t>(
          int32_t{plane.at(x, y)} - RoundDiv<int32_t>(acc, 256));
    }
  }

  const double scale = std::ldexp(1.0, -IntegerDct::kFractionBits);
  std::vector<int32_t> tile(kPatternSize * kPatternSize);
  std::vector<int32_t> coefficients(tile.size());
  double energy = 0.0;
  for (int ty = 0; ty < tiles_y; ++ty) {
    for (int tx = 0; tx < tiles_x; ++tx) {
      for (int y = 0; y < kPatternSize; ++y) {
        const int16_t* row = high.Row(ty * kPatternSize + y) + tx * kPatternSize;
        std::copy_n(row, kPatternSize, tile.begin() + y * kPatternSize);
      }
      Dct64().Forward(tile, coefficients);
      for (int y = 0; y < kPatternSize; ++y) {
        for (int x = 0; x < kPatternSize; ++x) {
          if (x <= kGrainBandCutoff && y <= kGrainBandCutoff) continue;
          const double c = coefficients[y * kPatternSize + x] * scale;
          energy += c * c;
        }
      }
    }
  }
  return energy / (tiles_x * tiles_y);
}

}  // namespace filmgrain
