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

#ifndef FILMGRAIN_TEMPORAL_DENOISE_H_
#define FILMGRAIN_TEMPORAL_DENOISE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "filmgrain/frame.h"

namespace filmgrain {

struct DenoiseConfig {
  int window_radius = 4;  // up to 2 * radius predictors
  int block_size = 16;
  int search_range = 16;
  double strength_sigma = 6.0;
  int threads = 1;

  // Throws kInvalidArgument naming the offending field.
  void Validate() const;
};

struct MotionVector {
  int dx = 0;
  int dy = 0;

  bool operator==(const MotionVector&) const = default;
};

// One entry per non-overlapping block in raster order; partial blocks at the
// right and bottom edges are included.
struct MotionField {
  int block_size = 0;
  int blocks_x = 0;
  int blocks_y = 0;
  std::vector<MotionVector> vectors;
  std::vector<uint64_t> costs;  // luma SSD of the chosen match

  const MotionVector& vector(int bx, int by) const {
    return vectors[static_cast<size_t>(by) * blocks_x + bx];
  }
  uint64_t cost(int bx, int by) const {
    return costs[static_cast<size_t>(by) * blocks_x + bx];
  }
};

// Full-search block matching on luma. For each block of |current|, picks the
// displacement into |reference| with minimum SSD among candidates that keep
// the block inside the frame; ties go to the smaller |dx| + |dy|, then to the
// earlier candidate in raster order (dy outer, dx inner).
MotionField MotionSearch(const Frame& current, const Frame& reference,
                         const DenoiseConfig& config);

// Weighted average of the center frame and its motion-compensated
// predictors: out = (c + sum w_i p_i) / (1 + sum w_i) with
// w_i = exp(-ssd_i / pixels / (2 sigma^2)) per block. |motion| holds one
// field per non-center frame of |window|, in window order, each mapping the
// center frame onto that reference. Chroma reuses the luma vectors halved
// toward zero.
Frame TemporalFilter(std::span<const Frame> window, int center_index,
                     std::span<const MotionField> motion,
                     const DenoiseConfig& config);

// Window of frame indices [first, last] used for |index| in a sequence of
// |frame_count| frames; truncated at the sequence ends.
struct FrameWindow {
  int first;
  int last;
};
FrameWindow DenoiseWindow(int frame_count, int index, int radius);

// Filters one frame of |frames| with its truncated window.
Frame DenoiseFrame(std::span<const Frame> frames, int index,
                   const DenoiseConfig& config);

// Filters every frame; output count equals input count.
std::vector<Frame> DenoiseSequence(std::span<const Frame> frames,
                                   const DenoiseConfig& config);

}  // namespace filmgrain

#endif  // FILMGRAIN_TEMPORAL_DENOISE_H_
