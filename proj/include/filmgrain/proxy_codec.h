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

#ifndef FILMGRAIN_PROXY_CODEC_H_
#define FILMGRAIN_PROXY_CODEC_H_

#include <array>
#include <cstdint>
#include <vector>

#include "filmgrain/frame.h"

namespace filmgrain {

// Stand-in for a real encoder: 8x8 integer DCT, uniform quantization of AC
// coefficients, and a bit-count estimate. DC is kept at unit step so flat
// content survives any quant_step unchanged.
struct ProxyCodecConfig {
  int quant_step = 16;
  int threads = 1;

  void Validate() const;
};

inline constexpr int kProxyBlockSize = 8;

struct ProxyStream {
  int width = 0;
  int height = 0;
  int quant_step = 1;
  // Quantized levels per plane over the 8-padded plane, block by block,
  // raster order within a block.
  std::array<std::vector<int32_t>, 3> levels;
  uint64_t bit_estimate = 0;
};

ProxyStream ProxyEncode(const Frame& frame, const ProxyCodecConfig& config);
Frame ProxyDecode(const ProxyStream& stream);

// Estimated bits for one block of 64 levels in zig-zag order: per nonzero
// level 1 + 2 floor(log2(|q| + 1)) plus Exp-Golomb length of its preceding
// zero run, and one end-of-block bit.
uint64_t EstimateBlockBits(const int32_t* levels);

}  // namespace filmgrain

#endif  // FILMGRAIN_PROXY_CODEC_H_
