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

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "filmgrain/dct.h"
#include "filmgrain/parallel.h"

namespace filmgrain {
namespace {

constexpr int kBlockSamples = kProxyBlockSize * kProxyBlockSize;

constexpr std::array<int, kBlockSamples> kZigZag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

int FloorLog2(uint64_t value) { return std::bit_width(value) - 1; }

int PaddedSize(int size) {
  return (size + kProxyBlockSize - 1) / kProxyBlockSize * kProxyBlockSize;
}

// Quantizer step for coefficient |index| in fixed-point coefficient units.
int64_t StepFor(int index, int quant_step) {
  const int64_t unit = int64_t{1} << IntegerDct::kFractionBits;
  return index == 0 ? unit : unit * quant_step;
}

uint64_t EncodePlane(const SamplePlane& plane, int quant_step, int threads,
                     std::vector<int32_t>& levels) {
  const int pw = PaddedSize(plane.width());
  const int ph = PaddedSize(plane.height());
  const int blocks_x = pw / kProxyBlockSize;
  const int blocks_y = ph / kProxyBlockSize;
  levels.assign(static_cast<size_t>(pw) * ph, 0);
  std::vector<uint64_t> row_bits(blocks_y, 0);
  ParallelFor(blocks_y, threads, [&](int by) {
    std::array<int32_t, kBlockSamples> block{};
    std::array<int32_t, kBlockSamples> coefficients{};
    for (int bx = 0; bx < blocks_x; ++bx) {
      for (int y = 0; y < kProxyBlockSize; ++y) {
        const int sy = std::min(by * kProxyBlockSize + y, plane.height() - 1);
        for (int x = 0; x < kProxyBlockSize; ++x) {
          const int sx = std::min(bx * kProxyBlockSize + x, plane.width() - 1);
          block[y * kProxyBlockSize + x] = plane.at(sx, sy);
        }
      }
      Dct8().Forward(block, coefficients);
      int32_t* out = levels.data() +
                     (static_cast<size_t>(by) * blocks_x + bx) * kBlockSamples;
      for (int i = 0; i < kBlockSamples; ++i) {
        out[i] = static_cast<int32_t>(
            RoundDiv<int64_t>(coefficients[i], StepFor(i, quant_step)));
      }
      row_bits[by] += EstimateBlockBits(out);
    }
  });
  uint64_t bits = 0;
  for (uint64_t b : row_bits) bits += b;
  return bits;
}

void DecodePlane(const std::vector<int32_t>& levels, int quant_step,
                 SamplePlane& plane) {
  const int pw = PaddedSize(plane.width());
  const int blocks_x = pw / kProxyBlockSize;
  const int blocks_y = PaddedSize(plane.height()) / kProxyBlockSize;
  std::array<int32_t, kBlockSamples> coefficients{};
  std::array<int32_t, kBlockSamples> block{};
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      const int32_t* in = levels.data() +
                          (static_cast<size_t>(by) * blocks_x + bx) * kBlockSamples;
      for (int i = 0; i < kBlockSamples; ++i) {
        coefficients[i] = static_cast<int32_t>(in[i] * StepFor(i, quant_step));
      }
      Dct8().Inverse(coefficients, block);
      for (int y = 0; y < kProxyBlockSize; ++y) {
        const int py = by * kProxyBlockSize + y;
        if (py >= plane.height()) break;
        for (int x = 0; x < kProxyBlockSize; ++x) {
          const int px = bx * kProxyBlockSize + x;
          if (px >= plane.width()) break;
          plane.at(px, py) =
              static_cast<uint8_t>(Clip3(0, kMaxSample, block[y * kProxyBlockSize + x]));
        }
      }
    }
  }
}

// Replaces the 8 samples straddling a block edge with a linear ramp when both
// sides are flat to within |beta| and the step across the edge is within
// |tc|.
void DeblockLine(uint8_t* s, ptrdiff_t stride, int beta, int tc) {
  const int p0 = s[-stride];
  const int q0 = s[0];
  if (std::abs(p0 - q0) > tc) return;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(s[-(i + 1) * stride] - p0) > beta) return;
    if (std::abs(s[i * stride] - q0) > beta) return;
  }
  const int p3 = s[-4 * stride];
  const int q3 = s[3 * stride];
  for (int k = 1; k < 7; ++k) {
    s[(k - 4) * stride] =
        static_cast<uint8_t>(RoundDiv(p3 * (7 - k) + q3 * k, 7));
  }
}

void DeblockPlane(SamplePlane& plane, int quant_step) {
  const int beta = quant_step / 2;
  const int tc = quant_step;
  if (beta == 0) return;
  const int width = plane.width();
  const int height = plane.height();
  for (int y = 0; y < height; ++y) {
    for (int x = kProxyBlockSize; x + 4 <= width; x += kProxyBlockSize) {
      DeblockLine(plane.Row(y) + x, 1, beta, tc);
    }
  }
  for (int y = kProxyBlockSize; y + 4 <= height; y += kProxyBlockSize) {
    for (int x = 0; x < width; ++x) {
      DeblockLine(plane.Row(y) + x, width, beta, tc);
    }
  }
}

}  // namespace

void ProxyCodecConfig::Validate() const {
  if (quant_step < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "quant_step must be >= 1, got " + std::to_string(quant_step));
  }
}

uint64_t EstimateBlockBits(const int32_t* levels) {
  uint64_t bits = 1;  // end of block
  uint64_t run = 0;
  for (int i = 0; i < kBlockSamples; ++i) {
    const int32_t q = levels[kZigZag[i]];
    if (q == 0) {
      ++run;
      continue;
    }
    const uint64_t magnitude = static_cast<uint64_t>(q < 0 ? -int64_t{q} : q);
    bits += 1 + 2 * FloorLog2(magnitude + 1);
    bits += 1 + 2 * FloorLog2(run + 1);
    run = 0;
  }
  return bits;
}

ProxyStream ProxyEncode(const Frame& frame, const ProxyCodecConfig& config) {
  config.Validate();
  ProxyStream stream;
  stream.width = frame.width();
  stream.height = frame.height();
  stream.quant_step = config.quant_step;
  for (int c = 0; c < 3; ++c) {
    stream.bit_estimate += EncodePlane(frame.plane(c), config.quant_step,
                                       config.threads, stream.levels[c]);
  }
  return stream;
}

Frame ProxyDecode(const ProxyStream& stream) {
  Frame frame(stream.width, stream.height);
  for (int c = 0; c < 3; ++c) {
    const SamplePlane& plane = frame.plane(c);
    const size_t expected = static_cast<size_t>(PaddedSize(plane.width())) *
                            PaddedSize(plane.height());
    if (stream.levels[c].size() != expected) {
      throw Error(ErrorCode::kGeometry, "proxy stream plane size mismatch");
    }
    DecodePlane(stream.levels[c], stream.quant_step, frame.plane(c));
    DeblockPlane(frame.plane(c), stream.quant_step);
  }
  return frame;
}

}  // namespace filmgrain
