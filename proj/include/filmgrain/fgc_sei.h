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

#ifndef FILMGRAIN_FGC_SEI_H_
#define FILMGRAIN_FGC_SEI_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "filmgrain/film_grain_params.h"

namespace filmgrain {

// MSB-first bit writer.
class BitWriter {
 public:
  void WriteBits(uint64_t value, int count);
  void WriteFlag(bool flag) { WriteBits(flag ? 1 : 0, 1); }
  void WriteUnsignedExpGolomb(uint64_t value);
  // se(v): 0 -> 0, 1 -> 1, -1 -> 2, 2 -> 3, ... Requires |value| < 2^31.
  void WriteSignedExpGolomb(int64_t value);
  // A single 1 bit followed by 0 bits up to the next byte boundary.
  void WriteTrailingBits();

  size_t bit_position() const { return bit_position_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t> TakeBytes() { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
  size_t bit_position_ = 0;
};

// MSB-first bit reader that never reads past the end of its buffer; running
// out of bits throws ParseError with the offending bit offset.
class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint64_t ReadBits(int count);
  bool ReadFlag() { return ReadBits(1) != 0; }
  uint64_t ReadUnsignedExpGolomb();
  int32_t ReadSignedExpGolomb();
  // Expects a 1 bit, zero padding to a byte boundary, and end of buffer.
  void ReadTrailingBits();

  size_t bit_position() const { return bit_position_; }
  size_t bits_left() const { return bytes_.size() * 8 - bit_position_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t bit_position_ = 0;
};

inline constexpr int kFilmGrainCharacteristicsPayloadType = 19;
inline constexpr size_t kMaxSeiPayloadBytes = size_t{1} << 16;

struct SeiMessage {
  int payload_type = kFilmGrainCharacteristicsPayloadType;
  std::vector<uint8_t> payload;

  bool operator==(const SeiMessage&) const = default;
};

// Film grain characteristics payload, canonical and byte aligned. Throws
// Error(kInvalidArgument) naming the first field outside its coded range.
std::vector<uint8_t> EncodeFgc(const FilmGrainParams& params);

// Inverse of EncodeFgc. Unknown model_id values are returned as parsed; the
// synthesizer rejects them. Throws ParseError on truncation, unsupported
// syntax, or malformed trailing bits.
FilmGrainParams DecodeFgc(std::span<const uint8_t> bytes);

// SEI message framing: payload_type and payload_size each coded as a run of
// 0xFF bytes plus a final byte (value = 255 * run + last), then the payload.
// No emulation prevention is applied.
std::vector<uint8_t> WrapSei(const SeiMessage& message);
SeiMessage UnwrapSei(std::span<const uint8_t> bytes);
// Parses one message from the front of |bytes|; sets |consumed|.
SeiMessage UnwrapSeiPrefix(std::span<const uint8_t> bytes, size_t& consumed);

// Sidecar file: back-to-back (frame_index u32 big-endian, wrapped SEI) records.
struct SidecarRecord {
  uint32_t frame_index = 0;
  SeiMessage message;

  bool operator==(const SidecarRecord&) const = default;
};

std::vector<uint8_t> EncodeSidecar(std::span<const SidecarRecord> records);
// Throws ParseError whose message names the record and byte offset.
std::vector<SidecarRecord> DecodeSidecar(std::span<const uint8_t> bytes);

SidecarRecord MakeFgcRecord(uint32_t frame_index, const FilmGrainParams& params);

}  // namespace filmgrain

#endif  // FILMGRAIN_FGC_SEI_H_
