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

#ifndef FILMGRAIN_TOOLCHAIN_H_
#define FILMGRAIN_TOOLCHAIN_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "filmgrain/film_grain_params.h"
#include "filmgrain/frame.h"
#include "filmgrain/grain_analysis.h"
#include "filmgrain/grain_synthesis.h"
#include "filmgrain/metrics.h"
#include "filmgrain/proxy_codec.h"
#include "filmgrain/temporal_denoise.h"

namespace filmgrain {

enum class ToolchainMode {
  kDefault,   // codec only
  kMctfOnly,  // denoise + codec
  kProposed,  // denoise + analyze + codec + synthesize
};

const char* ToolchainModeName(ToolchainMode mode);
// Accepts "default", "mctf_only", "proposed"; throws kInvalidArgument.
ToolchainMode ParseToolchainMode(const std::string& name);

// Shell command templates for a real encoder/decoder. {input}, {output} and
// {bitrate} (kbps) are substituted; the encoder's output file size is the
// bit count.
struct ExternalCodecConfig {
  std::string encode_command;
  std::string decode_command;
  double bitrate_kbps = 1000.0;
};

struct ToolchainConfig {
  DenoiseConfig denoise;
  AnalysisConfig analysis;
  SynthesisConfig synthesis;
  ProxyCodecConfig codec;
  std::optional<ExternalCodecConfig> external_codec;
  std::string work_directory;  // external codec scratch files; "" = temp dir
};

// Seconds per stage.
struct StageTimings {
  double denoise = 0.0;
  double analyze = 0.0;
  double encode = 0.0;
  double decode = 0.0;
  double synthesize = 0.0;

  double Total() const { return denoise + analyze + encode + decode + synthesize; }
};

// Metrics are frame averages against the original input.
struct ToolchainRecord {
  ToolchainMode mode = ToolchainMode::kDefault;
  int frame_count = 0;
  uint64_t bits = 0;
  PsnrResult psnr;
  std::optional<double> ms_ssim;  // absent when luma < 176x176
  double grain_band_energy = 0.0;
  double source_grain_band_energy = 0.0;
  StageTimings timings;
};

struct ToolchainRun {
  ToolchainRecord record;
  std::vector<Frame> output;
  std::vector<FilmGrainParams> params;  // proposed mode only
};

ToolchainRun RunToolchain(std::span<const Frame> original, ToolchainMode mode,
                          const ToolchainConfig& config);

std::vector<ToolchainRecord> RunComparison(std::span<const Frame> original,
                                           std::span<const ToolchainMode> modes,
                                           const ToolchainConfig& config);

// One JSON object per line.
std::string FormatReportJsonLines(std::span<const ToolchainRecord> records);
std::string FormatReportTable(std::span<const ToolchainRecord> records);

// Mean GrainBandEnergy of the luma planes.
double SequenceGrainBandEnergy(std::span<const Frame> frames);

}  // namespace filmgrain

#endif  // FILMGRAIN_TOOLCHAIN_H_
