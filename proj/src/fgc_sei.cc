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

#include "filmgrain/fgc_sei.h"

#include <limits>
#include <string>

#include "filmgrain/common.h"

namespace filmgrain {
namespace {

constexpr int kMaxExpGolombPrefix = 32;

[[noreturn]] void FieldError(const std::string& field, int64_t value) {
  throw Error(ErrorCode::kInvalidArgument,
              "FGC field " + field + " = " + std::to_string(value) +
                  " is outside its coded range");
}

void CheckRange(const std::string& field, int64_t value, int64_t low,
                int64_t high) {
  if (value < low || value > high) FieldError(field, value);
}

std::string ComponentField(const char* name, int c) {
  return std::string(name) + "[" + std::to_string(c) + "]";
}

std::string IntervalField(const char* name, int c, size_t i) {
  return std::string(name) + "[" + std::to_string(c) + "][" +
         std::to_string(i) + "]";
}

int32_t ModelValue(const IntensityInterval& iv, int j) {
  switch (j) {
    case 0:
      return iv.scaling_value;
    case 1:
      return iv.h_cutoff;
    default:
      return iv.v_cutoff;
  }
}

void WriteSeiVarLength(std::vector<uint8_t>& out, size_t value) {
  while (value >= 255) {
    out.push_back(0xFF);
    value -= 255;
  }
  out.push_back(static_cast<uint8_t>(value));
}

size_t ReadSeiVarLength(std::span<const uint8_t> bytes, size_t& pos,
                        const char* what) {
  size_t value = 0;
  for (;;) {
    if (pos >= bytes.size()) {
      throw ParseError(std::string("truncated SEI ") + what,
                       static_cast<int64_t>(pos) * 8);
    }
    const uint8_t byte = bytes[pos++];
    value += byte;
    if (byte != 0xFF) return value;
    if (value > kMaxSeiPayloadBytes * 4) {
      throw ParseError(std::string("SEI ") + what + " too large",
                       static_cast<int64_t>(pos) * 8);
    }
  }
}

}  // namespace

void BitWriter::WriteBits(uint64_t value, int count) {
  for (int i = count - 1; i >= 0; --i) {
    if (bit_position_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1) {
      bytes_.back() |= static_cast<uint8_t>(0x80u >> (bit_position_ % 8));
    }
    ++bit_position_;
  }
}

void BitWriter::WriteUnsignedExpGolomb(uint64_t value) {
  const uint64_t code = value + 1;
  int length = 0;
  while ((code >> (length + 1)) != 0) ++length;
  WriteBits(0, length);
  WriteBits(code, length + 1);
}

void BitWriter::WriteSignedExpGolomb(int64_t value) {
  constexpr int64_t kLimit = int64_t{1} << 31;
  if (value <= -kLimit || value >= kLimit) {
    throw Error(ErrorCode::kInvalidArgument,
                "se(v) value " + std::to_string(value) + " needs |v| < 2^31");
  }
  const uint64_t code = value > 0 ? static_cast<uint64_t>(2 * value - 1)
                                  : static_cast<uint64_t>(-2 * value);
  WriteUnsignedExpGolomb(code);
}

void BitWriter::WriteTrailingBits() {
  WriteBits(1, 1);
  while (bit_position_ % 8 != 0) WriteBits(0, 1);
}

uint64_t BitReader::ReadBits(int count) {
  if (static_cast<size_t>(count) > bits_left()) {
    throw ParseError("payload truncated: need " + std::to_string(count) +
                         " bit(s), " + std::to_string(bits_left()) + " left",
                     static_cast<int64_t>(bit_position_));
  }
  uint64_t value = 0;
  for (int i = 0; i < count; ++i) {
    const uint8_t byte = bytes_[bit_position_ / 8];
    value = (value << 1) | ((byte >> (7 - bit_position_ % 8)) & 1);
    ++bit_position_;
  }
  return value;
}

uint64_t BitReader::ReadUnsignedExpGolomb() {
  const size_t start = bit_position_;
  int leading_zeros = 0;
  while (!ReadFlag()) {
    if (++leading_zeros > kMaxExpGolombPrefix) {
      throw ParseError("Exp-Golomb prefix longer than 32 bits",
                       static_cast<int64_t>(start));
    }
  }
  const uint64_t suffix = ReadBits(leading_zeros);
  return ((uint64_t{1} << leading_zeros) - 1) + suffix;
}

int32_t BitReader::ReadSignedExpGolomb() {
  const size_t start = bit_position_;
  const uint64_t code = ReadUnsignedExpGolomb();
  const int64_t value = (code & 1) ? static_cast<int64_t>((code + 1) / 2)
                                   : -static_cast<int64_t>(code / 2);
  if (value > std::numeric_limits<int32_t>::max() ||
      value <= std::numeric_limits<int32_t>::min()) {
    throw ParseError("se(v) value out of 32-bit range",
                     static_cast<int64_t>(start));
  }
  return static_cast<int32_t>(value);
}

void BitReader::ReadTrailingBits() {
  const size_t start = bit_position_;
  if (!ReadFlag()) {
    throw ParseError("missing stop bit in trailing bits",
                     static_cast<int64_t>(start));
  }
  while (bit_position_ % 8 != 0) {
    if (ReadFlag()) {
      throw ParseError("non-zero alignment bit in trailing bits",
                       static_cast<int64_t>(bit_position_ - 1));
    }
  }
  if (bits_left() != 0) {
    throw ParseError("unexpected data after trailing bits",
                     static_cast<int64_t>(bit_position_));
  }
}

std::vector<uint8_t> EncodeFgc(const FilmGrainParams& params) {
  BitWriter w;
  w.WriteFlag(params.cancel_flag);
  if (!params.cancel_flag) {
    CheckRange("film_grain_model_id", params.model_id, 0, 3);
    CheckRange("blending_mode_id", params.blending_mode_id, 0, 3);
    CheckRange("log2_scale_factor", params.log2_scale_factor, 0, 15);
    for (int c = 0; c < 3; ++c) {
      if (!params.comp_model_present[c]) continue;
      const ComponentModel& model = params.components[c];
      CheckRange(ComponentField("num_intensity_intervals", c),
                 static_cast<int64_t>(model.intervals.size()), 1,
                 kMaxIntervals);
      CheckRange(ComponentField("num_model_values", c), model.num_model_values,
                 1, kModelValuesPerInterval);
      for (size_t i = 0; i < model.intervals.size(); ++i) {
        const IntensityInterval& iv = model.intervals[i];
        CheckRange(IntervalField("intensity_interval_lower_bound", c, i),
                   iv.lower_bound, 0, 255);
        CheckRange(IntervalField("intensity_interval_upper_bound", c, i),
                   iv.upper_bound, iv.lower_bound, 255);
        for (int j = 0; j < model.num_model_values; ++j) {
          CheckRange(IntervalField("comp_model_value", c, i) + "[" +
                         std::to_string(j) + "]",
                     ModelValue(iv, j),
                     -(int64_t{1} << 31) + 1, (int64_t{1} << 31) - 1);
        }
      }
    }

    w.WriteBits(static_cast<uint64_t>(params.model_id), 2);
    w.WriteFlag(false);  // separate_colour_description_present_flag
    w.WriteBits(static_cast<uint64_t>(params.blending_mode_id), 2);
    w.WriteBits(static_cast<uint64_t>(params.log2_scale_factor), 4);
    for (int c = 0; c < 3; ++c) w.WriteFlag(params.comp_model_present[c]);
    for (int c = 0; c < 3; ++c) {
      if (!params.comp_model_present[c]) continue;
      const ComponentModel& model = params.components[c];
      w.WriteBits(model.intervals.size() - 1, 8);
      w.WriteBits(static_cast<uint64_t>(model.num_model_values - 1), 3);
      for (const IntensityInterval& iv : model.intervals) {
        w.WriteBits(static_cast<uint64_t>(iv.lower_bound), 8);
        w.WriteBits(static_cast<uint64_t>(iv.upper_bound), 8);
        for (int j = 0; j < model.num_model_values; ++j) {
          w.WriteSignedExpGolomb(ModelValue(iv, j));
        }
      }
    }
    w.WriteFlag(params.persistence_flag);
  }
  w.WriteTrailingBits();
  return w.TakeBytes();
}

FilmGrainParams DecodeFgc(std::span<const uint8_t> bytes) {
  if (bytes.empty()) throw ParseError("empty FGC payload", 0);
  BitReader r(bytes);
  FilmGrainParams params;
  params.cancel_flag = r.ReadFlag();
  if (!params.cancel_flag) {
    params.model_id = static_cast<int>(r.ReadBits(2));
    if (r.ReadFlag()) {
      throw ParseError("separate_colour_description_present_flag is not supported",
                       static_cast<int64_t>(r.bit_position() - 1));
    }
    params.blending_mode_id = static_cast<int>(r.ReadBits(2));
    params.log2_scale_factor = static_cast<int>(r.ReadBits(4));
    for (int c = 0; c < 3; ++c) params.comp_model_present[c] = r.ReadFlag();
    for (int c = 0; c < 3; ++c) {
      if (!params.comp_model_present[c]) continue;
      ComponentModel& model = params.components[c];
      const int interval_count = static_cast<int>(r.ReadBits(8)) + 1;
      const size_t values_at = r.bit_position();
      model.num_model_values = static_cast<int>(r.ReadBits(3)) + 1;
      if (model.num_model_values > kModelValuesPerInterval) {
        throw ParseError("num_model_values " +
                             std::to_string(model.num_model_values) +
                             " is not supported (at most 3)",
                         static_cast<int64_t>(values_at));
      }
      model.intervals.reserve(interval_count);
      for (int i = 0; i < interval_count; ++i) {
        IntensityInterval iv;
        const size_t bounds_at = r.bit_position();
        iv.lower_bound = static_cast<int>(r.ReadBits(8));
        iv.upper_bound = static_cast<int>(r.ReadBits(8));
        if (iv.lower_bound > iv.upper_bound) {
          throw ParseError("intensity interval lower bound exceeds upper bound",
                           static_cast<int64_t>(bounds_at));
        }
        iv.scaling_value = r.ReadSignedExpGolomb();
        if (model.num_model_values > 1) iv.h_cutoff = r.ReadSignedExpGolomb();
        iv.v_cutoff =
            model.num_model_values > 2 ? r.ReadSignedExpGolomb() : iv.h_cutoff;
        model.intervals.push_back(iv);
      }
    }
    params.persistence_flag = r.ReadFlag();
  }
  r.ReadTrailingBits();
  return params;
}

std::vector<uint8_t> WrapSei(const SeiMessage& message) {
  if (message.payload_type < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative SEI payload type");
  }
  if (message.payload.empty() || message.payload.size() > kMaxSeiPayloadBytes) {
    throw Error(ErrorCode::kInvalidArgument,
                "SEI payload size " + std::to_string(message.payload.size()) +
                    " outside [1, 65536]");
  }
  std::vector<uint8_t> out;
  WriteSeiVarLength(out, static_cast<size_t>(message.payload_type));
  WriteSeiVarLength(out, message.payload.size());
  out.insert(out.end(), message.payload.begin(), message.payload.end());
  return out;
}

SeiMessage UnwrapSeiPrefix(std::span<const uint8_t> bytes, size_t& consumed) {
  size_t pos = 0;
  SeiMessage message;
  message.payload_type =
      static_cast<int>(ReadSeiVarLength(bytes, pos, "payload type"));
  const size_t size = ReadSeiVarLength(bytes, pos, "payload size");
  if (size == 0 || size > kMaxSeiPayloadBytes) {
    throw ParseError("SEI payload size " + std::to_string(size) +
                         " outside [1, 65536]",
                     static_cast<int64_t>(pos) * 8);
  }
  if (bytes.size() - pos < size) {
    throw ParseError("SEI payload truncated: declared " +
                         std::to_string(size) + " byte(s), " +
                         std::to_string(bytes.size() - pos) + " available",
                     static_cast<int64_t>(pos) * 8);
  }
  message.payload.assign(bytes.begin() + static_cast<ptrdiff_t>(pos),
                         bytes.begin() + static_cast<ptrdiff_t>(pos + size));
  consumed = pos + size;
  return message;
}

SeiMessage UnwrapSei(std::span<const uint8_t> bytes) {
  size_t consumed = 0;
  SeiMessage message = UnwrapSeiPrefix(bytes, consumed);
  if (consumed != bytes.size()) {
    throw ParseError("SEI size mismatch: " +
                         std::to_string(bytes.size() - consumed) +
                         " trailing byte(s)",
                     static_cast<int64_t>(consumed) * 8);
  }
  return message;
}

std::vector<uint8_t> EncodeSidecar(std::span<const SidecarRecord> records) {
  std::vector<uint8_t> out;
  for (const SidecarRecord& record : records) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out.push_back(static_cast<uint8_t>(record.frame_index >> shift));
    }
    const std::vector<uint8_t> wrapped = WrapSei(record.message);
    out.insert(out.end(), wrapped.begin(), wrapped.end());
  }
  return out;
}

std::vector<SidecarRecord> DecodeSidecar(std::span<const uint8_t> bytes) {
  std::vector<SidecarRecord> records;
  size_t pos = 0;
  while (pos < bytes.size()) {
    const std::string where = "sidecar record " + std::to_string(records.size()) +
                              " at byte offset " + std::to_string(pos);
    if (bytes.size() - pos < 4) {
      throw ParseError(where + ": truncated frame index",
                       static_cast<int64_t>(pos) * 8);
    }
    SidecarRecord record;
    for (int i = 0; i < 4; ++i) {
      record.frame_index = (record.frame_index << 8) | bytes[pos + i];
    }
    pos += 4;
    size_t consumed = 0;
    try {
      record.message = UnwrapSeiPrefix(bytes.subspan(pos), consumed);
    } catch (const ParseError& e) {
      throw ParseError(where + " (frame " + std::to_string(record.frame_index) +
                           "): " + e.detail(),
                       static_cast<int64_t>(pos) * 8 + e.bit_offset());
    }
    pos += consumed;
    records.push_back(std::move(record));
  }
  return records;
}

SidecarRecord MakeFgcRecord(uint32_t frame_index,
                            const FilmGrainParams& params) {
  SidecarRecord record;
  record.frame_index = frame_index;
  record.message.payload_type = kFilmGrainCharacteristicsPayloadType;
  record.message.payload = EncodeFgc(params);
  return record;
}

}  // namespace filmgrain
