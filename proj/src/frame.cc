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

#include "filmgrain/frame.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "filmgrain/file_io.h"

namespace filmgrain {

void SequenceGeometry::Validate() const {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw Error(ErrorCode::kGeometry,
                "4:2:0 geometry needs positive even dimensions, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (frame_count < 1) {
    throw Error(ErrorCode::kGeometry, "frame_count must be at least 1");
  }
  if (bit_depth != kSupportedBitDepth) {
    throw Error(ErrorCode::kUnsupported,
                "only 8-bit video is supported, got bit depth " +
                    std::to_string(bit_depth));
  }
}

Frame::Frame(int width, int height, uint8_t luma_fill, uint8_t chroma_fill) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw Error(ErrorCode::kGeometry,
                "frame dimensions must be positive and even, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  luma_ = SamplePlane(width, height, luma_fill);
  cb_ = SamplePlane(width / 2, height / 2, chroma_fill);
  cr_ = SamplePlane(width / 2, height / 2, chroma_fill);
}

SamplePlane& Frame::plane(int component) {
  switch (component) {
    case 0:
      return luma_;
    case 1:
      return cb_;
    case 2:
      return cr_;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "component index " + std::to_string(component));
}

const SamplePlane& Frame::plane(int component) const {
  return const_cast<Frame*>(this)->plane(component);
}

void RequireSameGeometry(const Frame& a, const Frame& b, const char* what) {
  if (!a.SameGeometry(b)) {
    throw Error(ErrorCode::kGeometry,
                std::string(what) + ": geometry mismatch " +
                    std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

namespace {

Frame FrameFromBytes(const uint8_t* bytes, const SequenceGeometry& geometry) {
  Frame frame(geometry.width, geometry.height);
  for (int c = 0; c < 3; ++c) {
    auto dst = frame.plane(c).samples();
    std::copy_n(bytes, dst.size(), dst.begin());
    bytes += dst.size();
  }
  return frame;
}

void RequireIndexInRange(const SequenceGeometry& geometry, int frame_index,
                         size_t available_bytes) {
  const size_t frame_bytes = geometry.FrameBytes();
  if (frame_index < 0 || frame_index >= geometry.frame_count ||
      (static_cast<size_t>(frame_index) + 1) * frame_bytes > available_bytes) {
    throw Error(ErrorCode::kOutOfRange,
                "frame index " + std::to_string(frame_index) +
                    " is out of range (" + std::to_string(geometry.frame_count) +
                    " frames declared, " + std::to_string(available_bytes) +
                    " bytes available)");
  }
}

}  // namespace

Frame ReadYuvFrame(std::span<const uint8_t> bytes,
                   const SequenceGeometry& geometry, int frame_index) {
  geometry.Validate();
  RequireIndexInRange(geometry, frame_index, bytes.size());
  return FrameFromBytes(bytes.data() + frame_index * geometry.FrameBytes(),
                        geometry);
}

Frame ReadYuvFrame(std::istream& stream, const SequenceGeometry& geometry,
                   int frame_index) {
  geometry.Validate();
  const size_t frame_bytes = geometry.FrameBytes();
  if (frame_index < 0 || frame_index >= geometry.frame_count) {
    RequireIndexInRange(geometry, frame_index, 0);
  }
  std::vector<uint8_t> buffer(frame_bytes);
  stream.clear();
  stream.seekg(static_cast<std::streamoff>(frame_index * frame_bytes));
  stream.read(reinterpret_cast<char*>(buffer.data()),
              static_cast<std::streamsize>(frame_bytes));
  if (static_cast<size_t>(stream.gcount()) != frame_bytes) {
    throw Error(ErrorCode::kOutOfRange,
                "frame index " + std::to_string(frame_index) +
                    " is out of range: stream ends early");
  }
  return FrameFromBytes(buffer.data(), geometry);
}

std::vector<uint8_t> SerializeYuvFrame(const Frame& frame) {
  std::vector<uint8_t> bytes;
  bytes.reserve(static_cast<size_t>(frame.width()) * frame.height() * 3 / 2);
  for (int c = 0; c < 3; ++c) {
    const auto src = frame.plane(c).samples();
    bytes.insert(bytes.end(), src.begin(), src.end());
  }
  return bytes;
}

size_t WriteYuvFrame(const Frame& frame, std::ostream& sink) {
  const std::vector<uint8_t> bytes = SerializeYuvFrame(frame);
  sink.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!sink) throw Error(ErrorCode::kIo, "YUV sink write failed");
  return bytes.size();
}

std::vector<Frame> ReadYuvFile(const std::string& path,
                               SequenceGeometry& geometry) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  if (geometry.frame_count == 0) {
    SequenceGeometry probe = geometry;
    probe.frame_count = 1;
    probe.Validate();
    geometry.frame_count = static_cast<int>(bytes.size() / probe.FrameBytes());
    if (geometry.frame_count == 0) {
      throw Error(ErrorCode::kOutOfRange,
                  "'" + path + "' holds less than one frame");
    }
  }
  geometry.Validate();
  std::vector<Frame> frames;
  frames.reserve(geometry.frame_count);
  for (int i = 0; i < geometry.frame_count; ++i) {
    frames.push_back(ReadYuvFrame(bytes, geometry, i));
  }
  return frames;
}

void WriteYuvFile(const std::string& path, std::span<const Frame> frames) {
  std::vector<uint8_t> bytes;
  for (const Frame& frame : frames) {
    const std::vector<uint8_t> one = SerializeYuvFrame(frame);
    bytes.insert(bytes.end(), one.begin(), one.end());
  }
  WriteFileAtomically(path, bytes);
}

int BlockAverage(const SamplePlane& plane, int x, int y, int size) {
  if (size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block size must be >= 1");
  }
  if (x < 0 || y < 0 || x >= plane.width() || y >= plane.height()) {
    throw Error(ErrorCode::kOutOfRange,
                "block origin (" + std::to_string(x) + "," + std::to_string(y) +
                    ") outside plane");
  }
  const int x_end = std::min(x + size, plane.width());
  const int y_end = std::min(y + size, plane.height());
  int64_t sum = 0;
  for (int yy = y; yy < y_end; ++yy) {
    const uint8_t* row = plane.Row(yy);
    for (int xx = x; xx < x_end; ++xx) sum += row[xx];
  }
  const int64_t count = int64_t{x_end - x} * (y_end - y);
  return static_cast<int>(RoundDiv(sum, count));
}

double BlockStdDev(const SignedPlane& plane, int x, int y, int size) {
  const int x_end = std::min(x + size, plane.width());
  const int y_end = std::min(y + size, plane.height());
  int64_t sum = 0;
  int64_t sum_sq = 0;
  for (int yy = y; yy < y_end; ++yy) {
    const int16_t* row = plane.Row(yy);
    for (int xx = x; xx < x_end; ++xx) {
      sum += row[xx];
      sum_sq += int64_t{row[xx]} * row[xx];
    }
  }
  const int64_t count = int64_t{x_end - x} * (y_end - y);
  if (count <= 0) return 0.0;
  const double mean = static_cast<double>(sum) / count;
  const double variance = static_cast<double>(sum_sq) / count - mean * mean;
  return variance > 0.0 ? std::sqrt(variance) : 0.0;
}

}  // namespace filmgrain
