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

#include "filmgrain/toolchain.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "filmgrain/fgc_sei.h"
#include "json.hpp"

namespace filmgrain {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string Substitute(std::string text, const std::string& key,
                       const std::string& value) {
  const std::string token = "{" + key + "}";
  for (size_t pos = text.find(token); pos != std::string::npos;
       pos = text.find(token, pos + value.size())) {
    text.replace(pos, token.size(), value);
  }
  return text;
}

void RunCommand(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status != 0) {
    throw Error(ErrorCode::kIo, "external codec command failed (status " +
                                    std::to_string(status) + "): " + command);
  }
}

struct CodecResult {
  std::vector<Frame> decoded;
  uint64_t bits = 0;
};

CodecResult RunProxyCodec(std::span<const Frame> input,
                          const ProxyCodecConfig& config, StageTimings& timings) {
  CodecResult result;
  std::vector<ProxyStream> streams;
  Stopwatch encode;
  for (const Frame& frame : input) {
    streams.push_back(ProxyEncode(frame, config));
    result.bits += streams.back().bit_estimate;
  }
  timings.encode += encode.Seconds();
  Stopwatch decode;
  for (const ProxyStream& stream : streams) {
    result.decoded.push_back(ProxyDecode(stream));
  }
  timings.decode += decode.Seconds();
  return result;
}

CodecResult RunExternalCodec(std::span<const Frame> input,
                             const ExternalCodecConfig& codec,
                             const std::string& work_directory,
                             StageTimings& timings) {
  namespace fs = std::filesystem;
  const fs::path dir =
      work_directory.empty()
          ? fs::temp_directory_path() /
                ("filmgrain-codec-" + std::to_string(::getpid()))
          : fs::path(work_directory);
  fs::create_directories(dir);
  const std::string raw = (dir / "codec_input.yuv").string();
  const std::string bitstream = (dir / "codec_output.bin").string();
  const std::string decoded_path = (dir / "codec_decoded.yuv").string();
  WriteYuvFile(raw, input);

  std::ostringstream bitrate;
  bitrate << codec.bitrate_kbps;
  std::string encode_cmd = Substitute(codec.encode_command, "input", raw);
  encode_cmd = Substitute(encode_cmd, "output", bitstream);
  encode_cmd = Substitute(encode_cmd, "bitrate", bitrate.str());
  std::string decode_cmd = Substitute(codec.decode_command, "input", bitstream);
  decode_cmd = Substitute(decode_cmd, "output", decoded_path);
  decode_cmd = Substitute(decode_cmd, "bitrate", bitrate.str());

  CodecResult result;
  Stopwatch encode;
  RunCommand(encode_cmd);
  timings.encode += encode.Seconds();
  result.bits = static_cast<uint64_t>(fs::file_size(bitstream)) * 8;

  Stopwatch decode;
  RunCommand(decode_cmd);
  timings.decode += decode.Seconds();
  SequenceGeometry geometry;
  geometry.width = input.front().width();
  geometry.height = input.front().height();
  geometry.frame_count = static_cast<int>(input.size());
  result.decoded = ReadYuvFile(decoded_path, geometry);
  return result;
}

}  // namespace

const char* ToolchainModeName(ToolchainMode mode) {
  switch (mode) {
    case ToolchainMode::kDefault:
      return "default";
    case ToolchainMode::kMctfOnly:
      return "mctf_only";
    case ToolchainMode::kProposed:
      return "proposed";
  }
  return "unknown";
}

ToolchainMode ParseToolchainMode(const std::string& name) {
  if (name == "default") return ToolchainMode::kDefault;
  if (name == "mctf_only") return ToolchainMode::kMctfOnly;
  if (name == "proposed") return ToolchainMode::kProposed;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown toolchain mode '" + name +
                  "' (expected default, mctf_only or proposed)");
}

double SequenceGrainBandEnergy(std::span<const Frame> frames) {
  if (frames.empty()) return 0.0;
  double sum = 0.0;
  for (const Frame& frame : frames) sum += GrainBandEnergy(frame.luma());
  return sum / static_cast<double>(frames.size());
}

ToolchainRun RunToolchain(std::span<const Frame> original, ToolchainMode mode,
                          const ToolchainConfig& config) {
  if (original.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "toolchain input is empty");
  }
  for (const Frame& frame : original) {
    RequireSameGeometry(original.front(), frame, "toolchain input");
  }
  ToolchainRun run;
  ToolchainRecord& record = run.record;
  record.mode = mode;
  record.frame_count = static_cast<int>(original.size());

  std::vector<Frame> codec_input(original.begin(), original.end());
  if (mode != ToolchainMode::kDefault) {
    Stopwatch watch;
    codec_input = DenoiseSequence(original, config.denoise);
    record.timings.denoise = watch.Seconds();
  }

  const bool analyzable = original.front().width() >= kPatternSize &&
                          original.front().height() >= kPatternSize;
  std::shared_ptr<const GrainPatternDatabase> database;
  uint64_t sei_bits = 0;
  if (mode == ToolchainMode::kProposed) {
    database = SharedDatabase(config.synthesis.master_seed);
    const GrainAnalyzer analyzer(database, config.analysis);
    Stopwatch watch;
    for (size_t i = 0; i < original.size(); ++i) {
      const FilmGrainParams params =
          analyzable ? analyzer.AnalyzeFrame(original[i], codec_input[i])
                     : FilmGrainParams::Cancelled();
      // Parameters reach the synthesizer only through the coded payload.
      const std::vector<uint8_t> payload = EncodeFgc(params);
      sei_bits += WrapSei({kFilmGrainCharacteristicsPayloadType, payload}).size() * 8;
      run.params.push_back(DecodeFgc(payload));
    }
    record.timings.analyze = watch.Seconds();
  }

  CodecResult coded =
      config.external_codec
          ? RunExternalCodec(codec_input, *config.external_codec,
                             config.work_directory, record.timings)
          : RunProxyCodec(codec_input, config.codec, record.timings);
  record.bits = coded.bits + sei_bits;

  if (mode == ToolchainMode::kProposed) {
    Stopwatch watch;
    for (size_t i = 0; i < coded.decoded.size(); ++i) {
      run.output.push_back(ApplyGrain(coded.decoded[i], run.params[i], *database,
                                      static_cast<int>(i), config.synthesis));
    }
    record.timings.synthesize = watch.Seconds();
  } else {
    run.output = std::move(coded.decoded);
  }

  const bool ssim_ok = original.front().width() >= kMinMsSsimLuma &&
                       original.front().height() >= kMinMsSsimLuma;
  double ssim_sum = 0.0;
  for (size_t i = 0; i < original.size(); ++i) {
    const PsnrResult p = Psnr(original[i], run.output[i]);
    record.psnr.y += p.y;
    record.psnr.u += p.u;
    record.psnr.v += p.v;
    if (ssim_ok) ssim_sum += MsSsim(original[i], run.output[i]).yuv;
  }
  const double n = static_cast<double>(original.size());
  record.psnr.y /= n;
  record.psnr.u /= n;
  record.psnr.v /= n;
  record.psnr.yuv = CombineYuv(record.psnr.y, record.psnr.u, record.psnr.v);
  if (ssim_ok) record.ms_ssim = ssim_sum / n;
  if (analyzable) {
    record.grain_band_energy = SequenceGrainBandEnergy(run.output);
    record.source_grain_band_energy = SequenceGrainBandEnergy(original);
  }
  return run;
}

std::vector<ToolchainRecord> RunComparison(std::span<const Frame> original,
                                           std::span<const ToolchainMode> modes,
                                           const ToolchainConfig& config) {
  std::vector<ToolchainRecord> records;
  for (ToolchainMode mode : modes) {
    records.push_back(RunToolchain(original, mode, config).record);
  }
  return records;
}

std::string FormatReportJsonLines(std::span<const ToolchainRecord> records) {
  std::string out;
  for (const ToolchainRecord& r : records) {
    nlohmann::ordered_json j;
    j["toolchain"] = ToolchainModeName(r.mode);
    j["frames"] = r.frame_count;
    j["bits"] = r.bits;
    j["psnr_y"] = r.psnr.y;
    j["psnr_u"] = r.psnr.u;
    j["psnr_v"] = r.psnr.v;
    j["psnr_yuv"] = r.psnr.yuv;
    j["ms_ssim_yuv"] = r.ms_ssim ? nlohmann::ordered_json(*r.ms_ssim)
                                 : nlohmann::ordered_json(nullptr);
    j["grain_band_energy"] = r.grain_band_energy;
    j["source_grain_band_energy"] = r.source_grain_band_energy;
    j["time_denoise_s"] = r.timings.denoise;
    j["time_analyze_s"] = r.timings.analyze;
    j["time_encode_s"] = r.timings.encode;
    j["time_decode_s"] = r.timings.decode;
    j["time_synthesize_s"] = r.timings.synthesize;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string FormatReportTable(std::span<const ToolchainRecord> records) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %12s %9s %9s %9s %9s %9s %10s %8s\n",
                "toolchain", "bits", "PSNR-Y", "PSNR-U", "PSNR-V", "PSNR-YUV",
                "MS-SSIM", "grain-E", "time[s]");
  out += line;
  for (const ToolchainRecord& r : records) {
    char ssim[16];
    if (r.ms_ssim) {
      std::snprintf(ssim, sizeof(ssim), "%.5f", *r.ms_ssim);
    } else {
      std::snprintf(ssim, sizeof(ssim), "n/a");
    }
    std::snprintf(line, sizeof(line),
                  "%-10s %12llu %9.3f %9.3f %9.3f %9.3f %9s %10.1f %8.3f\n",
                  ToolchainModeName(r.mode),
                  static_cast<unsigned long long>(r.bits), r.psnr.y, r.psnr.u,
                  r.psnr.v, r.psnr.yuv, ssim, r.grain_band_energy,
                  r.timings.Total());
    out += line;
  }
  return out;
}

}  // namespace filmgrain
