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

#include "filmgrain/common.h"

#include <cmath>

#include <gtest/gtest.h>

#include "filmgrain/parallel.h"

namespace filmgrain {
namespace {

// Round-half-away-from-zero through long double, independent of the integer
// implementation.
int64_t OracleRoundDiv(int64_t n, int64_t d) {
  const long double q = static_cast<long double>(n) / d;
  return static_cast<int64_t>(q < 0 ? -std::floor(-q + 0.5L) : std::floor(q + 0.5L));
}

TEST(RoundingTest, RoundDivMatchesOracle) {
  for (int64_t n = -1000; n <= 1000; ++n) {
    for (int64_t d : {-7, -3, -2, -1, 1, 2, 3, 4, 7, 16}) {
      ASSERT_EQ(RoundDiv(n, d), OracleRoundDiv(n, d)) << n << "/" << d;
    }
  }
}

TEST(RoundingTest, TiesGoAwayFromZero) {
  EXPECT_EQ(RoundDiv(5, 2), 3);
  EXPECT_EQ(RoundDiv(-5, 2), -3);
  EXPECT_EQ(RoundDiv(510, 4), 128);
  EXPECT_EQ(RoundShift(6, 2), 2);
  EXPECT_EQ(RoundShift(-6, 2), -2);
  EXPECT_EQ(RoundShift(2, 2), 1);
  EXPECT_EQ(RoundShift(-2, 2), -1);
}

TEST(RoundingTest, RoundShiftMatchesRoundDiv) {
  for (int shift = 0; shift < 20; ++shift) {
    for (int64_t v = -5000; v <= 5000; v += 7) {
      ASSERT_EQ(RoundShift(v, shift), OracleRoundDiv(v, int64_t{1} << shift));
    }
  }
}

TEST(RoundingTest, Clip3) {
  EXPECT_EQ(Clip3(0, 255, -4), 0);
  EXPECT_EQ(Clip3(0, 255, 300), 255);
  EXPECT_EQ(Clip3(0, 255, 17), 17);
}

TEST(ErrorTest, ParseErrorCarriesOffset) {
  const ParseError error("bad field", 42);
  EXPECT_EQ(error.code(), ErrorCode::kParse);
  EXPECT_EQ(error.bit_offset(), 42);
  EXPECT_EQ(error.detail(), "bad field");
  EXPECT_NE(std::string(error.what()).find("42"), std::string::npos);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  for (int workers : {1, 3, 8}) {
    std::vector<int> hits(101, 0);
    ParallelFor(101, workers, [&](int i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(ParallelForTest, PropagatesExceptions) {
  EXPECT_THROW(ParallelFor(16, 4,
                           [](int i) {
                             if (i == 5) throw Error(ErrorCode::kIo, "boom");
                           }),
               Error);
}

}  // namespace
}  // namespace filmgrain
