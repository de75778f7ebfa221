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

#ifndef FILMGRAIN_FRAME_H_
#define FILMGRAIN_FRAME_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "filmgrain/common.h"

namespace filmgrain {

// Row-major 2-D sample array with stride == width.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, T fill = T{})
      : width_(width), height_(height),
        samples_(static_cast<size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0) {
      throw Error(ErrorCode::kGeometry,
                  "plane dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return samples_.empty(); }

  T& at(int x, int y) { return samples_[Index(x, y)]; }
  const T& at(int x, int y) const { return samples_[Index(x, y)]; }

  T* Row(int y) { return samples_.data() + static_cast<size_t>(y) * width_; }
  const T* Row(int y) const {
    return samples_.data() + static_cast<size_t>(y) * width_;
  }

  std::span<T> samples() { return samples_; }
  std::span<const T> samples() const { return samples_; }

  bool operator==(const Plane& other) const = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> samples_;
};

using SamplePlane = Plane<uint8_t>;
// Residuals and grain patterns; 8-bit residuals span [-255, 255].
using SignedPlane = Plane<int16_t>;

inline constexpr int kSupportedBitDepth = 8;
inline constexpr int kMaxSample = (1 << kSupportedBitDepth) - 1;

struct SequenceGeometry {
  int width = 0;
  int height = 0;
  int bit_depth = kSupportedBitDepth;
  int frame_count = 1;
  double frame_rate = 25.0;  // metadata only

  // Throws kGeometry for odd/non-positive sizes or frame_count < 1, and
  // kUnsupported for anything but 8-bit samples.
  void Validate() const;

  // Bytes of one planar 4:2:0 frame.
  size_t FrameBytes() const {
    return static_cast<size_t>(width) * height * 3 / 2;
  }
};

// One planar 4:2:0 picture. Chroma planes are half size in each dimension.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, uint8_t luma_fill = 0, uint8_t chroma_fill = 128);

  int width() const { return luma_.width(); }
  int height() const { return luma_.height(); }
  int bit_depth() const { return kSupportedBitDepth; }

  SamplePlane& luma() { return luma_; }
  const SamplePlane& luma() const { return luma_; }
  SamplePlane& cb() { return cb_; }
  const SamplePlane& cb() const { return cb_; }
  SamplePlane& cr() { return cr_; }
  const SamplePlane& cr() const { return cr_; }

  // 0 = Y, 1 = Cb, 2 = Cr.
  SamplePlane& plane(int component);
  const SamplePlane& plane(int component) const;

  bool SameGeometry(const Frame& other) const {
    return width() == other.width() && height() == other.height();
  }

  bool operator==(const Frame& other) const = default;

 private:
  SamplePlane luma_;
  SamplePlane cb_;
  SamplePlane cr_;
};

// Throws kGeometry naming both sizes when the frames differ.
void RequireSameGeometry(const Frame& a, const Frame& b, const char* what);

// Decodes frame |frame_index| from a headerless planar YUV 4:2:0 buffer.
Frame ReadYuvFrame(std::span<const uint8_t> bytes,
                   const SequenceGeometry& geometry, int frame_index);
Frame ReadYuvFrame(std::istream& stream, const SequenceGeometry& geometry,
                   int frame_index);

// Appends the frame as Y, Cb, Cr planes. Returns bytes written.
size_t WriteYuvFrame(const Frame& frame, std::ostream& sink);
std::vector<uint8_t> SerializeYuvFrame(const Frame& frame);

// Whole-file helpers. When geometry.frame_count is 0 the count is derived
// from the file size.
std::vector<Frame> ReadYuvFile(const std::string& path,
                               SequenceGeometry& geometry);
void WriteYuvFile(const std::string& path, std::span<const Frame> frames);

// Mean of the size x size window at (x, y), clipped to the plane. Rounded to
// nearest with ties up.
int BlockAverage(const SamplePlane& plane, int x, int y, int size);

// Population standard deviation of the clipped size x size window at (x, y).
double BlockStdDev(const SignedPlane& plane, int x, int y, int size);

}  // namespace filmgrain

#endif  // FILMGRAIN_FRAME_H_
