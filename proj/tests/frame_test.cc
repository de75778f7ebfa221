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

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "filmgrain/file_io.h"
#include "test_util.h"

namespace filmgrain {
namespace {

using testing::RandomFrame;
using testing::TempDir;

SequenceGeometry Geometry(int w, int h, int frames = 1) {
  SequenceGeometry g;
  g.width = w;
  g.height = h;
  g.frame_count = frames;
  return g;
}

TEST(FrameTest, ChromaIsHalfSize) {
  const Frame frame(16, 10, 3, 7);
  EXPECT_EQ(frame.cb().width(), 8);
  EXPECT_EQ(frame.cr().height(), 5);
  EXPECT_EQ(frame.luma().at(15, 9), 3);
  EXPECT_EQ(frame.cr().at(0, 0), 7);
}

TEST(FrameTest, ReadsTinyPlanarFrame) {
  const std::vector<uint8_t> bytes = {10, 20, 30, 40, 128, 128};
  const Frame frame = ReadYuvFrame(bytes, Geometry(2, 2), 0);
  EXPECT_EQ(frame.luma().at(0, 0), 10);
  EXPECT_EQ(frame.luma().at(1, 0), 20);
  EXPECT_EQ(frame.luma().at(0, 1), 30);
  EXPECT_EQ(frame.luma().at(1, 1), 40);
  EXPECT_EQ(frame.cb().at(0, 0), 128);
  EXPECT_EQ(frame.cr().at(0, 0), 128);
  EXPECT_EQ(SerializeYuvFrame(frame), bytes);
}

TEST(FrameTest, IndexPastEndNamesIndex) {
  const std::vector<uint8_t> bytes(12, 0);
  try {
    ReadYuvFrame(bytes, Geometry(2, 2, 2), 2);
    FAIL() << "expected out-of-range error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
    EXPECT_NE(std::string(e.what()).find("frame index 2"), std::string::npos);
  }
  EXPECT_THROW(ReadYuvFrame(std::span(bytes).first(8), Geometry(2, 2, 2), 1),
               Error);
}

TEST(FrameTest, RejectsOddAndDeepGeometry) {
  try {
    Geometry(3, 2).Validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGeometry);
  }
  SequenceGeometry deep = Geometry(2, 2);
  deep.bit_depth = 10;
  try {
    deep.Validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  EXPECT_THROW(Geometry(2, 2, 0).Validate(), Error);
}

TEST(FrameTest, FullHdFrameSize) {
  const SequenceGeometry g = Geometry(1920, 1080);
  EXPECT_EQ(g.FrameBytes(), 3110400u);
  const std::vector<uint8_t> bytes(3110400, 9);
  const Frame frame = ReadYuvFrame(bytes, g, 0);
  EXPECT_EQ(frame.luma().samples().size(), 2073600u);
}

TEST(FrameTest, WriteReportsByteCount) {
  std::mt19937 rng(3);
  const Frame frame = RandomFrame(6, 4, rng);
  std::ostringstream sink;
  EXPECT_EQ(WriteYuvFrame(frame, sink), 36u);
  EXPECT_EQ(sink.str().size(), 36u);
}

TEST(FrameTest, RandomRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const int w = 2 * (1 + static_cast<int>(rng() % 20));
    const int h = 2 * (1 + static_cast<int>(rng() % 20));
    const Frame frame = RandomFrame(w, h, rng);
    const std::vector<uint8_t> bytes = SerializeYuvFrame(frame);
    ASSERT_EQ(ReadYuvFrame(bytes, Geometry(w, h), 0), frame);
  }
}

TEST(FrameTest, StreamReaderSeeksToIndex) {
  std::mt19937 rng(5);
  const Frame a = RandomFrame(4, 4, rng);
  const Frame b = RandomFrame(4, 4, rng);
  std::stringstream stream;
  WriteYuvFrame(a, stream);
  WriteYuvFrame(b, stream);
  EXPECT_EQ(ReadYuvFrame(stream, Geometry(4, 4, 2), 1), b);
  EXPECT_EQ(ReadYuvFrame(stream, Geometry(4, 4, 2), 0), a);
  EXPECT_THROW(ReadYuvFrame(stream, Geometry(4, 4, 3), 2), Error);
}

TEST(FrameTest, FileRoundTripDerivesFrameCount) {
  TempDir dir;
  std::mt19937 rng(7);
  std::vector<Frame> frames;
  for (int i = 0; i < 3; ++i) frames.push_back(RandomFrame(8, 6, rng));
  const std::string path = dir.File("seq.yuv");
  WriteYuvFile(path, frames);
  EXPECT_EQ(std::filesystem::file_size(path), 3u * 72u);
  SequenceGeometry g = Geometry(8, 6, 0);
  EXPECT_EQ(ReadYuvFile(path, g), frames);
  EXPECT_EQ(g.frame_count, 3);
  // Only the final file remains after the atomic write.
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()),
                          std::filesystem::directory_iterator()),
            1);
}

TEST(FrameTest, MissingFileIsIoError) {
  SequenceGeometry g = Geometry(8, 6, 0);
  try {
    ReadYuvFile("/nonexistent/dir/x.yuv", g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_THROW(WriteFileAtomically("/nonexistent/dir/x.bin", std::vector<uint8_t>{1}),
               Error);
}

TEST(BlockAverageTest, ConstantAndTies) {
  const SamplePlane flat(8, 8, 77);
  EXPECT_EQ(BlockAverage(flat, 0, 0, 8), 77);
  SamplePlane tie(2, 2);
  tie.at(0, 1) = 255;
  tie.at(1, 1) = 255;
  EXPECT_EQ(BlockAverage(tie, 0, 0, 2), 128);
}

TEST(BlockAverageTest, MatchesBruteForceIncludingEdges) {
  std::mt19937 rng(13);
  const Frame frame = RandomFrame(20, 12, rng);
  const SamplePlane& plane = frame.luma();
  for (int size : {1, 3, 8}) {
    for (int y = 0; y < plane.height(); ++y) {
      for (int x = 0; x < plane.width(); ++x) {
        int sum = 0;
        int count = 0;
        for (int yy = y; yy < std::min(y + size, plane.height()); ++yy) {
          for (int xx = x; xx < std::min(x + size, plane.width()); ++xx) {
            sum += plane.at(xx, yy);
            ++count;
          }
        }
        const int expected = static_cast<int>(std::floor(sum / double(count) + 0.5));
        ASSERT_EQ(BlockAverage(plane, x, y, size), expected) << x << "," << y;
      }
    }
  }
}

TEST(BlockAverageTest, PartialEdgeBlockAveragesInBoundsOnly) {
  SamplePlane plane(8, 12, 0);
  for (int y = 8; y < 12; ++y) {
    for (int x = 0; x < 8; ++x) plane.at(x, y) = static_cast<uint8_t>(100 + x);
  }
  // 8x4 in bounds: mean of 100..107 = 103.5 -> 104.
  EXPECT_EQ(BlockAverage(plane, 0, 8, 8), 104);
}

TEST(BlockAverageTest, OriginOutsidePlaneThrows) {
  const SamplePlane plane(8, 8);
  EXPECT_THROW(BlockAverage(plane, 8, 0, 8), Error);
  EXPECT_THROW(BlockAverage(plane, 0, -1, 8), Error);
  EXPECT_THROW(BlockAverage(plane, 0, 0, 0), Error);
}

TEST(BlockStdDevTest, MatchesBruteForce) {
  std::mt19937 rng(17);
  const SignedPlane plane = testing::RandomSignedPlane(13, 9, -50, 50, rng);
  for (int y = 0; y < 9; y += 4) {
    for (int x = 0; x < 13; x += 4) {
      double s = 0, s2 = 0;
      int n = 0;
      for (int yy = y; yy < std::min(y + 8, 9); ++yy) {
        for (int xx = x; xx < std::min(x + 8, 13); ++xx) {
          s += plane.at(xx, yy);
          s2 += plane.at(xx, yy) * plane.at(xx, yy);
          ++n;
        }
      }
      const double mean = s / n;
      EXPECT_NEAR(BlockStdDev(plane, x, y, 8), std::sqrt(s2 / n - mean * mean), 1e-9);
    }
  }
}

}  // namespace
}  // namespace filmgrain
