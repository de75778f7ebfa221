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

#include "filmgrain/temporal_denoise.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "filmgrain/dsp/dsp.h"
#include "filmgrain/parallel.h"

namespace filmgrain {
namespace {

struct BlockRect {
  int x;
  int y;
  int width;
  int height;
};

BlockRect BlockAt(const MotionField& field, int bx, int by, int frame_width,
                  int frame_height) {
  const int x = bx * field.block_size;
  const int y = by * field.block_size;
  return {x, y, std::min(field.block_size, frame_width - x),
          std::min(field.block_size, frame_height - y)};
}

uint8_t RoundToSample(double value) {
  return static_cast<uint8_t>(
      Clip3(0.0, static_cast<double>(kMaxSample), std::floor(value + 0.5)));
}

// Filters one plane. |scale| is 1 for luma and 2 for chroma; vectors and
// block rectangles are divided by it (vectors toward zero).
void FilterPlane(std::span<const Frame> window, int center_index,
                 std::span<const MotionField> motion,
                 std::span<const int> references,
                 std::span<const double> weights, int component, int scale,
                 int threads, SamplePlane& out) {
  const SamplePlane& center = window[center_index].plane(component);
  const MotionField& layout = motion.front();
  const int luma_width = window[center_index].width();
  const int luma_height = window[center_index].height();
  const size_t refs = references.size();

  ParallelFor(layout.blocks_y, threads, [&](int by) {
    for (int bx = 0; bx < layout.blocks_x; ++bx) {
      const BlockRect luma_rect =
          BlockAt(layout, bx, by, luma_width, luma_height);
      const int x0 = luma_rect.x / scale;
      const int y0 = luma_rect.y / scale;
      const int w = luma_rect.width / scale;
      const int h = luma_rect.height / scale;
      const size_t block_index =
          static_cast<size_t>(by) * layout.blocks_x + bx;
      double weight_sum = 1.0;
      for (size_t i = 0; i < refs; ++i) {
        weight_sum += weights[i * layout.vectors.size() + block_index];
      }
      for (int y = y0; y < y0 + h; ++y) {
        for (int x = x0; x < x0 + w; ++x) {
          double acc = center.at(x, y);
          for (size_t i = 0; i < refs; ++i) {
            const MotionVector& mv = motion[i].vectors[block_index];
            const SamplePlane& ref = window[references[i]].plane(component);
            const int rx = Clip3(0, ref.width() - 1, x + mv.dx / scale);
            const int ry = Clip3(0, ref.height() - 1, y + mv.dy / scale);
            acc += weights[i * layout.vectors.size() + block_index] *
                   ref.at(rx, ry);
          }
          out.at(x, y) = RoundToSample(acc / weight_sum);
        }
      }
    }
  });
}

}  // namespace

void DenoiseConfig::Validate() const {
  if (window_radius < 1 || window_radius > 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "window_radius must be in [1,4], got " +
                    std::to_string(window_radius));
  }
  if (block_size != 8 && block_size != 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "block_size must be 8 or 16, got " + std::to_string(block_size));
  }
  if (search_range < 1) {
    throw Error(ErrorCode::kInvalidArgument, "search_range must be >= 1");
  }
  if (!(strength_sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "strength_sigma must be > 0");
  }
}

MotionField MotionSearch(const Frame& current, const Frame& reference,
                         const DenoiseConfig& config) {
  config.Validate();
  RequireSameGeometry(current, reference, "motion search");
  const SamplePlane& cur = current.luma();
  const SamplePlane& ref = reference.luma();
  const int width = cur.width();
  const int height = cur.height();

  MotionField field;
  field.block_size = config.block_size;
  field.blocks_x = (width + config.block_size - 1) / config.block_size;
  field.blocks_y = (height + config.block_size - 1) / config.block_size;
  field.vectors.resize(static_cast<size_t>(field.blocks_x) * field.blocks_y);
  field.costs.resize(field.vectors.size());

  const auto& kernels = dsp::GetKernels();
  const int range = config.search_range;
  ParallelFor(field.blocks_y, config.threads, [&](int by) {
    for (int bx = 0; bx < field.blocks_x; ++bx) {
      const BlockRect rect = BlockAt(field, bx, by, width, height);
      const uint8_t* block = cur.Row(rect.y) + rect.x;
      const int dy_min = std::max(-range, -rect.y);
      const int dy_max = std::min(range, height - rect.height - rect.y);
      const int dx_min = std::max(-range, -rect.x);
      const int dx_max = std::min(range, width - rect.width - rect.x);
      uint64_t best_cost = UINT64_MAX;
      int best_l1 = 0;
      MotionVector best;
      for (int dy = dy_min; dy <= dy_max; ++dy) {
        for (int dx = dx_min; dx <= dx_max; ++dx) {
          const uint64_t cost = kernels.block_ssd(
              block, width, ref.Row(rect.y + dy) + rect.x + dx, width,
              rect.width, rect.height);
          const int l1 = std::abs(dx) + std::abs(dy);
          if (cost < best_cost || (cost == best_cost && l1 < best_l1)) {
            best_cost = cost;
            best_l1 = l1;
            best = {dx, dy};
          }
        }
      }
      const size_t index = static_cast<size_t>(by) * field.blocks_x + bx;
      field.vectors[index] = best;
      field.costs[index] = best_cost;
    }
  });
  return field;
}

Frame TemporalFilter(std::span<const Frame> window, int center_index,
                     std::span<const MotionField> motion,
                     const DenoiseConfig& config) {
  config.Validate();
  if (window.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "temporal filter window is empty");
  }
  if (center_index < 0 || center_index >= static_cast<int>(window.size())) {
    throw Error(ErrorCode::kOutOfRange,
                "center index " + std::to_string(center_index) +
                    " outside window of " + std::to_string(window.size()));
  }
  if (motion.size() + 1 != window.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one motion field per reference frame");
  }
  const Frame& center = window[center_index];
  if (motion.empty()) return center;

  std::vector<int> references;
  for (int i = 0; i < static_cast<int>(window.size()); ++i) {
    if (i == center_index) continue;
    RequireSameGeometry(center, window[i], "temporal filter");
    references.push_back(i);
  }

  const MotionField& layout = motion.front();
  const size_t block_count = layout.vectors.size();
  const double denominator = 2.0 * config.strength_sigma * config.strength_sigma;
  std::vector<double> weights(references.size() * block_count);
  for (size_t i = 0; i < references.size(); ++i) {
    if (motion[i].vectors.size() != block_count ||
        motion[i].block_size != layout.block_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  "motion fields have inconsistent layouts");
    }
    for (int by = 0; by < layout.blocks_y; ++by) {
      for (int bx = 0; bx < layout.blocks_x; ++bx) {
        const BlockRect rect =
            BlockAt(layout, bx, by, center.width(), center.height());
        const size_t index = static_cast<size_t>(by) * layout.blocks_x + bx;
        const double ssd_per_pixel =
            static_cast<double>(motion[i].costs[index]) /
            (rect.width * rect.height);
        weights[i * block_count + index] = std::exp(-ssd_per_pixel / denominator);
      }
    }
  }

  Frame out(center.width(), center.height());
  for (int c = 0; c < 3; ++c) {
    FilterPlane(window, center_index, motion, references, weights, c,
                c == 0 ? 1 : 2, config.threads, out.plane(c));
  }
  return out;
}

FrameWindow DenoiseWindow(int frame_count, int index, int radius) {
  if (index < 0 || index >= frame_count) {
    throw Error(ErrorCode::kOutOfRange,
                "frame " + std::to_string(index) + " outside sequence of " +
                    std::to_string(frame_count));
  }
  return {std::max(0, index - radius), std::min(frame_count - 1, index + radius)};
}

Frame DenoiseFrame(std::span<const Frame> frames, int index,
                   const DenoiseConfig& config) {
  config.Validate();
  const FrameWindow range =
      DenoiseWindow(static_cast<int>(frames.size()), index, config.window_radius);
  std::vector<MotionField> motion;
  for (int j = range.first; j <= range.last; ++j) {
    if (j != index) motion.push_back(MotionSearch(frames[index], frames[j], config));
  }
  return TemporalFilter(
      frames.subspan(range.first, range.last - range.first + 1),
      index - range.first, motion, config);
}

std::vector<Frame> DenoiseSequence(std::span<const Frame> frames,
                                   const DenoiseConfig& config) {
  config.Validate();
  if (frames.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot denoise an empty sequence");
  }
  std::vector<Frame> out;
  out.reserve(frames.size());
  for (int i = 0; i < static_cast<int>(frames.size()); ++i) {
    out.push_back(DenoiseFrame(frames, i, config));
  }
  return out;
}

}  // namespace filmgrain
