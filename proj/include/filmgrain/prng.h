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

#ifndef FILMGRAIN_PRNG_H_
#define FILMGRAIN_PRNG_H_

#include <cstdint>

namespace filmgrain {

// Linear congruential generator: state' = (1103515245 * state + 12345) mod 2^31.
// The constants are frozen; every grain sample in the toolchain derives from
// this stream, so changing them breaks bit-exactness of synthesized output.
class Lcg {
 public:
  static constexpr uint32_t kMultiplier = 1103515245u;
  static constexpr uint32_t kIncrement = 12345u;
  static constexpr uint32_t kModulusMask = 0x7FFFFFFFu;

  static constexpr uint32_t Step(uint32_t state) {
    return (kMultiplier * state + kIncrement) & kModulusMask;
  }

  explicit constexpr Lcg(uint32_t seed) : state_(seed) {}

  constexpr uint32_t Next() {
    state_ = Step(state_);
    return state_;
  }

  // Bits 16..23 of the next state.
  constexpr uint32_t NextByte() { return (Next() >> 16) & 0xFF; }

  constexpr uint32_t state() const { return state_; }

 private:
  uint32_t state_;
};

// Seed for a 2-D indexed sub-stream, e.g. a (h, v) cutoff pair or an 8x8
// block position.
constexpr uint32_t DeriveSeed(uint32_t master, uint32_t a, uint32_t b) {
  return Lcg::Step(master ^ (a * 131u + b));
}

}  // namespace filmgrain

#endif  // FILMGRAIN_PRNG_H_
