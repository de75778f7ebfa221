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

#ifndef FILMGRAIN_COMMON_H_
#define FILMGRAIN_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace filmgrain {

enum class ErrorCode {
  kInvalidArgument,
  kGeometry,
  kOutOfRange,
  kIo,
  kParse,
  kUnsupported,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers (the CLI in particular) map failures to exit statuses without
// string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors additionally carry the bit offset at which decoding failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int64_t bit_offset)
      : Error(ErrorCode::kParse, message + " (bit offset " +
                                     std::to_string(bit_offset) + ")"),
        detail_(message),
        bit_offset_(bit_offset) {}

  int64_t bit_offset() const { return bit_offset_; }
  // The message without the offset suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int64_t bit_offset_;
};

// Integer division rounded to nearest, ties away from zero. This is the one
// rounding rule used for every integer division in the toolchain.
template <typename T>
constexpr T RoundDiv(T numerator, T denominator) {
  static_assert(std::is_integral_v<T> && std::is_signed_v<T>);
  const bool negative = (numerator < 0) != (denominator < 0);
  const T n = numerator < 0 ? -numerator : numerator;
  const T d = denominator < 0 ? -denominator : denominator;
  const T q = (n + d / 2) / d;
  return negative ? -q : q;
}

// Right shift by |shift| bits with round-half-away-from-zero. Equivalent to
// RoundDiv(value, 1 << shift) for shift > 0; identity for shift == 0.
constexpr int64_t RoundShift(int64_t value, int shift) {
  if (shift <= 0) return value;
  const int64_t half = int64_t{1} << (shift - 1);
  return value >= 0 ? (value + half) >> shift : -((-value + half) >> shift);
}

template <typename T>
constexpr T Clip3(T low, T high, T value) {
  return value < low ? low : (value > high ? high : value);
}

}  // namespace filmgrain

#endif  // FILMGRAIN_COMMON_H_
