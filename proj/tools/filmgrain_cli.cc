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

// Command-line front end: each toolchain stage as a subcommand operating on
// raw YUV 4:2:0 files and FGC SEI sidecar files.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "filmgrain/dsp/dsp.h"
#include "filmgrain/fgc_sei.h"
#include "filmgrain/file_io.h"
#include "filmgrain/frame.h"
#include "filmgrain/grain_analysis.h"
#include "filmgrain/grain_synthesis.h"
#include "filmgrain/temporal_denoise.h"
#include "filmgrain/toolchain.h"

namespace filmgrain {
namespace {

enum ExitStatus {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitGeometryMismatch = 4,
  kExitCorrupt = 5,
};

// Raised by subcommands to pick an exit status explicitly.
class CliFailure : public std::runtime_error {
 public:
  CliFailure(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

int StatusFor(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kGeometry:
    case ErrorCode::kUnsupported:
      return kExitUsage;
    case ErrorCode::kIo:
    case ErrorCode::kOutOfRange:
      return kExitIo;
    case ErrorCode::kParse:
      return kExitCorrupt;
  }
  return kExitIo;
}

struct GeometryFlags {
  int width = 0;
  int height = 0;
  int frames = 0;  // 0 = derive from file size

  void Add(CLI::App* app) {
    app->add_option("--width", width, "Luma width in samples")->required();
    app->add_option("--height", height, "Luma height in samples")->required();
    app->add_option("--frames", frames,
                    "Frames to read (default: all frames in the file)")
        ->check(CLI::NonNegativeNumber);
  }

  SequenceGeometry ToGeometry() const {
    SequenceGeometry geometry;
    geometry.width = width;
    geometry.height = height;
    geometry.frame_count = frames == 0 ? 1 : frames;
    geometry.Validate();
    geometry.frame_count = frames;
    return geometry;
  }
};

std::vector<Frame> ReadSequence(const std::string& path,
                                const GeometryFlags& flags) {
  SequenceGeometry geometry = flags.ToGeometry();
  std::vector<Frame> frames = ReadYuvFile(path, geometry);
  if (flags.frames == 0) {
    const size_t size = ReadFileBytes(path).size();
    if (size % geometry.FrameBytes() != 0) {
      std::fprintf(stderr, "warning: '%s' ends with %zu bytes of a partial frame\n",
                   path.c_str(), size % geometry.FrameBytes());
    }
  }
  return frames;
}

struct DenoiseFlags {
  DenoiseConfig config;

  void Add(CLI::App* app) {
    app->add_option("--radius", config.window_radius,
                    "Frames on each side of the filtered frame (1-4)")
        ->capture_default_str();
    app->add_option("--block-size", config.block_size,
                    "Motion search block size (8 or 16)")
        ->capture_default_str();
    app->add_option("--search-range", config.search_range,
                    "Full-search range in pixels")
        ->capture_default_str();
    app->add_option("--sigma", config.strength_sigma, "Filter strength")
        ->capture_default_str();
  }
};

// Subcommand bodies. Flags are validated before any file is touched.

int RunDenoise(const std::string& input, const std::string& output,
               const GeometryFlags& geometry, DenoiseConfig config,
               int threads) {
  config.threads = threads;
  config.Validate();
  geometry.ToGeometry();
  const std::vector<Frame> frames = ReadSequence(input, geometry);
  WriteYuvFile(output, DenoiseSequence(frames, config));
  std::fprintf(stderr, "denoised %zu frame(s)\n", frames.size());
  return kExitOk;
}

int RunAnalyze(const std::string& input, const std::string& denoised_path,
               const std::string& sei_path, const GeometryFlags& geometry,
               DenoiseConfig denoise, AnalysisConfig analysis, uint32_t seed,
               int threads) {
  denoise.threads = threads;
  analysis.threads = threads;
  denoise.Validate();
  analysis.Validate();
  geometry.ToGeometry();
  const std::vector<Frame> original = ReadSequence(input, geometry);
  std::vector<Frame> denoised;
  if (denoised_path.empty()) {
    denoised = DenoiseSequence(original, denoise);
  } else {
    denoised = ReadSequence(denoised_path, geometry);
    if (denoised.size() != original.size()) {
      throw CliFailure(kExitGeometryMismatch,
                       "frame count mismatch: original has " +
                           std::to_string(original.size()) +
                           ", denoised has " + std::to_string(denoised.size()));
    }
  }
  const GrainAnalyzer analyzer(SharedDatabase(seed), analysis);
  std::vector<SidecarRecord> records;
  for (size_t i = 0; i < original.size(); ++i) {
    if (!original[i].SameGeometry(denoised[i])) {
      throw CliFailure(kExitGeometryMismatch,
                       "geometry mismatch at frame " + std::to_string(i));
    }
    records.push_back(MakeFgcRecord(static_cast<uint32_t>(i),
                                    analyzer.AnalyzeFrame(original[i], denoised[i])));
  }
  WriteFileAtomically(sei_path, EncodeSidecar(records));
  std::fprintf(stderr, "wrote %zu sidecar record(s)\n", records.size());
  return kExitOk;
}

int RunSynthesize(const std::string& input, const std::string& sei_path,
                  const std::string& output, const GeometryFlags& geometry,
                  SynthesisConfig config) {
  geometry.ToGeometry();
  std::vector<Frame> frames = ReadSequence(input, geometry);
  std::vector<SidecarRecord> records;
  try {
    records = DecodeSidecar(ReadFileBytes(sei_path));
  } catch (const ParseError& e) {
    throw CliFailure(kExitCorrupt, std::string("corrupt sidecar: ") + e.what());
  }
  std::map<uint32_t, FilmGrainParams> params;
  for (const SidecarRecord& record : records) {
    const std::string where = "frame " + std::to_string(record.frame_index);
    if (record.message.payload_type != kFilmGrainCharacteristicsPayloadType) {
      continue;
    }
    try {
      params[record.frame_index] = DecodeFgc(record.message.payload);
    } catch (const ParseError& e) {
      throw CliFailure(kExitCorrupt,
                       "corrupt sidecar record for " + where + ": " + e.what());
    }
  }
  const GrainPatternDatabase& database = *SharedDatabase(config.master_seed);
  int applied = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    const auto it = params.find(static_cast<uint32_t>(i));
    if (it == params.end()) continue;
    try {
      frames[i] = ApplyGrain(frames[i], it->second, database,
                             static_cast<int>(i), config);
    } catch (const Error& e) {
      throw CliFailure(kExitCorrupt, "cannot apply sidecar record for frame " +
                                         std::to_string(i) + ": " + e.what());
    }
    ++applied;
  }
  WriteYuvFile(output, frames);
  std::fprintf(stderr, "applied grain to %d of %zu frame(s)\n", applied,
               frames.size());
  return kExitOk;
}

std::vector<ToolchainMode> ParseModes(const std::string& list) {
  std::vector<ToolchainMode> modes;
  size_t start = 0;
  while (start <= list.size()) {
    const size_t comma = std::min(list.find(',', start), list.size());
    const std::string name = list.substr(start, comma - start);
    try {
      modes.push_back(ParseToolchainMode(name));
    } catch (const Error& e) {
      throw CliFailure(kExitUsage, e.what());
    }
    start = comma + 1;
  }
  return modes;
}

int RunPipeline(const std::string& input, const std::string& mode_list,
                const std::string& report_path, const std::string& output,
                const GeometryFlags& geometry, ToolchainConfig config) {
  const std::vector<ToolchainMode> modes = ParseModes(mode_list);
  if (!output.empty() && modes.size() != 1) {
    throw CliFailure(kExitUsage, "--output needs exactly one --mode");
  }
  config.denoise.Validate();
  config.analysis.Validate();
  config.codec.Validate();
  geometry.ToGeometry();
  const std::vector<Frame> frames = ReadSequence(input, geometry);
  std::vector<ToolchainRecord> records;
  for (ToolchainMode mode : modes) {
    ToolchainRun run = RunToolchain(frames, mode, config);
    if (!output.empty()) WriteYuvFile(output, run.output);
    records.push_back(run.record);
  }
  const std::string lines = FormatReportJsonLines(records);
  if (!report_path.empty()) {
    WriteFileAtomically(report_path,
                        std::vector<uint8_t>(lines.begin(), lines.end()));
  }
  std::fputs(FormatReportTable(records).c_str(), stdout);
  return kExitOk;
}

int RunSeiDump(const std::string& sei_path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(sei_path);
  std::vector<SidecarRecord> records;
  try {
    records = DecodeSidecar(bytes);
  } catch (const ParseError& e) {
    throw CliFailure(kExitCorrupt, std::string("corrupt sidecar: ") + e.what() +
                                       " (byte offset " +
                                       std::to_string(e.bit_offset() / 8) + ")");
  }
  for (const SidecarRecord& record : records) {
    std::printf("frame %u: payload_type=%d payload_bytes=%zu\n",
                record.frame_index, record.message.payload_type,
                record.message.payload.size());
    if (record.message.payload_type != kFilmGrainCharacteristicsPayloadType) {
      continue;
    }
    try {
      std::fputs(Describe(DecodeFgc(record.message.payload)).c_str(), stdout);
    } catch (const ParseError& e) {
      throw CliFailure(kExitCorrupt,
                       "frame " + std::to_string(record.frame_index) +
                           ": " + e.what() + " (byte offset " +
                           std::to_string(e.bit_offset() / 8) +
                           " within the payload)");
    }
  }
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Film grain toolchain: denoise, analyze, synthesize, evaluate"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  int threads = 1;
  uint32_t seed = 1;
  std::string simd;
  app.add_option("--simd", simd, "Force kernel set: scalar or avx2")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  std::string input, output, sei, denoised, report;
  std::string mode = "default";
  std::string encode_cmd, decode_cmd;
  double bitrate = 1000.0;
  GeometryFlags geometry;
  DenoiseFlags denoise;
  AnalysisConfig analysis;
  SynthesisConfig synthesis;
  ProxyCodecConfig codec;
  bool no_deblock = false;

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Grain pattern master seed")
        ->capture_default_str();
  };

  CLI::App* cmd_denoise = app.add_subcommand("denoise", "Temporal grain removal");
  cmd_denoise->add_option("--input", input, "Input YUV")->required();
  cmd_denoise->add_option("--output", output, "Denoised YUV")->required();
  geometry.Add(cmd_denoise);
  denoise.Add(cmd_denoise);
  add_threads(cmd_denoise);

  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "Estimate grain parameters per frame");
  cmd_analyze->add_option("--input", input, "Original YUV")->required();
  cmd_analyze->add_option("--denoised", denoised,
                          "Denoised YUV (default: denoise internally)");
  cmd_analyze->add_option("--sei", sei, "Sidecar output")->required();
  cmd_analyze->add_option("--max-intervals", analysis.max_intervals,
                          "Intensity intervals per frame")
      ->capture_default_str();
  geometry.Add(cmd_analyze);
  denoise.Add(cmd_analyze);
  add_threads(cmd_analyze);
  add_seed(cmd_analyze);

  CLI::App* cmd_synth =
      app.add_subcommand("synthesize", "Apply sidecar grain to decoded video");
  cmd_synth->add_option("--input", input, "Decoded YUV")->required();
  cmd_synth->add_option("--sei", sei, "Sidecar input")->required();
  cmd_synth->add_option("--output", output, "Output YUV")->required();
  cmd_synth->add_flag("--no-deblock", no_deblock,
                      "Disable grain block-edge smoothing");
  geometry.Add(cmd_synth);
  add_threads(cmd_synth);
  add_seed(cmd_synth);

  CLI::App* cmd_pipeline =
      app.add_subcommand("pipeline", "Run and compare toolchains");
  cmd_pipeline->add_option("--input", input, "Original YUV")->required();
  cmd_pipeline->add_option("--mode", mode,
                           "Comma-separated: default, mctf_only, proposed")
      ->capture_default_str();
  cmd_pipeline->add_option("--report", report, "JSON-lines report output");
  cmd_pipeline->add_option("--output", output,
                           "Reconstructed YUV (single mode only)");
  cmd_pipeline->add_option("--quant-step", codec.quant_step,
                           "Proxy codec quantizer step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_pipeline->add_option("--codec-encode-cmd", encode_cmd,
                           "External encoder ({input} {output} {bitrate})");
  cmd_pipeline->add_option("--codec-decode-cmd", decode_cmd,
                           "External decoder ({input} {output})");
  cmd_pipeline->add_option("--bitrate", bitrate, "External codec kbps")
      ->capture_default_str();
  cmd_pipeline->add_option("--max-intervals", analysis.max_intervals,
                           "Intensity intervals per frame")
      ->capture_default_str();
  geometry.Add(cmd_pipeline);
  denoise.Add(cmd_pipeline);
  add_threads(cmd_pipeline);
  add_seed(cmd_pipeline);

  CLI::App* cmd_dump = app.add_subcommand("sei-dump", "Print sidecar contents");
  cmd_dump->add_option("--sei", sei, "Sidecar input")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!simd.empty()) {
      dsp::SetActiveSimdLevel(simd == "avx2" ? dsp::SimdLevel::kAvx2
                                             : dsp::SimdLevel::kScalar);
    }
    synthesis.master_seed = seed;
    synthesis.threads = threads;
    synthesis.deblocking_enabled = !no_deblock;
    if (*cmd_denoise) {
      return RunDenoise(input, output, geometry, denoise.config, threads);
    }
    if (*cmd_analyze) {
      return RunAnalyze(input, denoised, sei, geometry, denoise.config,
                        analysis, seed, threads);
    }
    if (*cmd_synth) {
      return RunSynthesize(input, sei, output, geometry, synthesis);
    }
    if (*cmd_pipeline) {
      if (encode_cmd.empty() != decode_cmd.empty()) {
        throw CliFailure(kExitUsage,
                         "--codec-encode-cmd and --codec-decode-cmd go together");
      }
      ToolchainConfig config;
      config.denoise = denoise.config;
      config.denoise.threads = threads;
      config.analysis = analysis;
      config.analysis.threads = threads;
      config.synthesis = synthesis;
      config.codec = codec;
      config.codec.threads = threads;
      if (!encode_cmd.empty()) {
        config.external_codec = ExternalCodecConfig{encode_cmd, decode_cmd, bitrate};
      }
      return RunPipeline(input, mode, report, output, geometry, config);
    }
    if (*cmd_dump) return RunSeiDump(sei);
  } catch (const CliFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.status() == kExitUsage) std::cerr << app.help();
    return e.status();
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", ErrorCodeName(e.code()), e.what());
    return StatusFor(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace filmgrain

int main(int argc, char** argv) { return filmgrain::Main(argc, argv); }
