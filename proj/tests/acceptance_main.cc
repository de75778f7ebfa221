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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "filmgrain/dct.h"
#include "filmgrain/fgc_sei.h"
#include "filmgrain/grain_analysis.h"
#include "filmgrain/grain_synthesis.h"
#include "filmgrain/metrics.h"
#include "filmgrain/temporal_denoise.h"
#include "filmgrain/toolchain.h"

namespace filmgrain {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Frame SmoothFixture(int width, int height, double amplitude) {
  Frame f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      f.luma().at(x, y) = static_cast<uint8_t>(
          std::lround(128 + amplitude * std::sin(x / 40.0) * std::cos(y / 33.0)));
    }
  }
  return f;
}

FilmGrainParams OneInterval(int scaling, int h, int v, int log2_scale) {
  FilmGrainParams p;
  p.log2_scale_factor = log2_scale;
  p.comp_model_present[0] = true;
  p.components[0].intervals.push_back({0, 255, scaling, h, v});
  return p;
}

FilmGrainParams RandomParams(std::mt19937& rng) {
  std::uniform_int_distribution<int> byte(0, 255);
  if (byte(rng) < 20) return FilmGrainParams::Cancelled();
  FilmGrainParams p;
  p.model_id = byte(rng) % 4;
  p.blending_mode_id = byte(rng) % 4;
  p.log2_scale_factor = byte(rng) % 16;
  p.persistence_flag = byte(rng) & 1;
  for (int c = 0; c < 3; ++c) {
    p.comp_model_present[c] = byte(rng) & 1;
    if (!p.comp_model_present[c]) continue;
    ComponentModel& m = p.components[c];
    m.num_model_values = 1 + byte(rng) % 3;
    const int count = 1 + byte(rng) % (byte(rng) < 30 ? 256 : 6);
    std::uniform_int_distribution<int32_t> wide(-(1 << 30), 1 << 30);
    for (int i = 0; i < count; ++i) {
      IntensityInterval iv;
      iv.lower_bound = byte(rng);
      iv.upper_bound = std::uniform_int_distribution<int>(iv.lower_bound, 255)(rng);
      iv.scaling_value = byte(rng) < 10 ? wide(rng) : byte(rng);
      if (m.num_model_values > 1) iv.h_cutoff = 2 + byte(rng) % 13;
      iv.v_cutoff = m.num_model_values > 2 ? 2 + byte(rng) % 13 : iv.h_cutoff;
      m.intervals.push_back(iv);
    }
  }
  return p;
}

Outcome DatabaseCardinality() {
  const GrainPatternDatabase db = GrainPatternDatabase::Build(1);
  bool shapes = true;
  for (int h = kMinCutoff; h <= kMaxCutoff; ++h) {
    for (int v = kMinCutoff; v <= kMaxCutoff; ++v) {
      const SignedPlane& p = db.pattern(h, v);
      shapes = shapes && p.width() == kPatternSize && p.height() == kPatternSize;
    }
  }
  return {db.pattern_count() == 169 && shapes,
          Format("%zu patterns, all 64x64: %s", db.pattern_count(), shapes ? "yes" : "no")};
}

Outcome LowPassMask() {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int32_t> value(-100000, 100000);
  std::uniform_int_distribution<int> cutoff(0, 63);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    CoefficientPlane in(kPatternSize, kPatternSize);
    for (int32_t& c : in.samples()) c = value(rng);
    const int h = cutoff(rng), v = cutoff(rng);
    const CoefficientPlane out = LowPassFilter(in, h, v);
    for (int y = 0; y < kPatternSize; ++y) {
      for (int x = 0; x < kPatternSize; ++x) {
        const int32_t expected = (x > h || y > v) ? 0 : in.at(x, y);
        if (out.at(x, y) != expected) ++violations;
      }
    }
  }
  return {violations == 0, Format("%d coefficient violations over 1000 triples", violations)};
}

Outcome DctRoundTrip() {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> value(-255, 255);
  int worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    SignedPlane block(kPatternSize, kPatternSize);
    for (int16_t& s : block.samples()) s = static_cast<int16_t>(value(rng));
    const SignedPlane back = InverseDct64(ForwardDct64(block));
    for (size_t i = 0; i < block.samples().size(); ++i) {
      worst = std::max(worst, std::abs(block.samples()[i] - back.samples()[i]));
    }
  }
  return {worst <= 1, Format("max abs error %d LSB", worst)};
}

Outcome SeiRoundTrip() {
  std::mt19937 rng(4);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const FilmGrainParams p = RandomParams(rng);
    const std::vector<uint8_t> bytes = EncodeFgc(p);
    const FilmGrainParams decoded = DecodeFgc(bytes);
    if (!(decoded == p) || EncodeFgc(decoded) != bytes) ++mismatches;
  }
  const size_t cancel_size = EncodeFgc(FilmGrainParams::Cancelled()).size();
  return {mismatches == 0 && cancel_size == 1,
          Format("%d mismatches in 1000; cancel message %zu byte(s)", mismatches, cancel_size)};
}

Outcome AnalysisSynthesisConsistency() {
  const Frame flat(352, 288, 128);
  const auto db = SharedDatabase(1);
  const GrainAnalyzer& analyzer = *SharedAnalyzer(1);
  constexpr int kLog2 = 5;
  int passed = 0, total = 0;
  double worst_scale_error = 0;
  std::string failures;
  for (int h : {4, 8, 12}) {
    for (int v : {4, 8, 12}) {
      for (int scale : {16, 48}) {
        ++total;
        const Frame grainy = ApplyGrain(flat, OneInterval(scale, h, v, kLog2), *db, 0);
        const FilmGrainParams p = analyzer.AnalyzeFrame(grainy, flat);
        bool ok = !p.cancel_flag && p.comp_model_present[0] &&
                  p.components[0].intervals.size() == 1;
        if (ok) {
          const IntensityInterval& iv = p.components[0].intervals[0];
          const double recovered =
              std::ldexp(static_cast<double>(iv.scaling_value), kLog2 - p.log2_scale_factor);
          const double error = recovered / scale - 1.0;
          worst_scale_error = std::max(worst_scale_error, std::abs(error));
          ok = std::abs(iv.h_cutoff - h) <= 1 && std::abs(iv.v_cutoff - v) <= 1 &&
               std::abs(error) <= 0.20;
          if (!ok) {
            failures += Format(" (%d,%d,s%d)->(%d,%d,%.1f)", h, v, scale, iv.h_cutoff,
                               iv.v_cutoff, recovered);
          }
        } else {
          failures += Format(" (%d,%d,s%d)->unusable", h, v, scale);
        }
        if (ok) ++passed;
      }
    }
  }
  return {passed == total, Format("%d/%d cases, worst scaling error %.1f%%%s", passed, total,
                                  100 * worst_scale_error, failures.c_str())};
}

Outcome SynthesisDeterminism() {
  std::mt19937 rng(6);
  Frame decoded = SmoothFixture(352, 288, 60);
  for (uint8_t& s : decoded.cb().samples()) s = static_cast<uint8_t>(rng());
  FilmGrainParams p;
  p.log2_scale_factor = 6;
  p.comp_model_present = {true, true, true};
  p.components[0].intervals = {{0, 99, 40, 6, 10}, {100, 159, 80, 10, 6}, {160, 255, 30, 14, 14}};
  p.components[1].intervals = {{0, 255, 20, 4, 4}};
  p.components[2].intervals = {{50, 200, 25, 8, 12}};
  const auto db = SharedDatabase(1);
  SynthesisConfig config;
  const Frame a = ApplyGrain(decoded, p, *db, 3, config);
  const Frame b = ApplyGrain(decoded, p, *db, 3, config);
  config.threads = 4;
  const Frame c = ApplyGrain(decoded, p, *db, 3, config);
  const Frame d = ApplyGrain(decoded, p, *db, 3, config);
  const bool same = a == b && a == c && a == d;
  return {same && a != decoded,
          Format("runs identical across threads {1,4}: %s", same ? "yes" : "no")};
}

double Variance(const std::vector<Frame>& a, const std::vector<Frame>& b) {
  double sum = 0, sum2 = 0, n = 0;
  for (size_t f = 0; f < a.size(); ++f) {
    const auto& pa = a[f].luma().samples();
    const auto& pb = b[f].luma().samples();
    for (size_t i = 0; i < pa.size(); ++i) {
      const double d = static_cast<double>(pa[i]) - pb[i];
      sum += d;
      sum2 += d * d;
    }
    n += static_cast<double>(pa.size());
  }
  return sum2 / n - (sum / n) * (sum / n);
}

double MeanLumaPsnr(const std::vector<Frame>& reference, const std::vector<Frame>& test) {
  double total = 0;
  for (size_t i = 0; i < reference.size(); ++i) {
    total += PlanePsnr(reference[i].luma(), test[i].luma());
  }
  return total / static_cast<double>(reference.size());
}

Outcome DenoiserEfficacy() {
  std::mt19937 rng(7);
  const Frame clean = SmoothFixture(352, 288, 60);
  std::normal_distribution<double> noise(0.0, 5.0);
  std::vector<Frame> cleans(9, clean), noisy;
  for (int i = 0; i < 9; ++i) {
    Frame f = clean;
    for (uint8_t& s : f.luma().samples()) {
      s = static_cast<uint8_t>(std::clamp(std::lround(s + noise(rng)), 0L, 255L));
    }
    noisy.push_back(std::move(f));
  }
  const std::vector<Frame> out = DenoiseSequence(noisy, DenoiseConfig{});
  const double before = Variance(noisy, cleans);
  const double after = Variance(out, cleans);
  const double gain = MeanLumaPsnr(cleans, out) - MeanLumaPsnr(cleans, noisy);
  return {after <= 0.5 * before && gain >= 3.0,
          Format("residual variance %.2f -> %.2f (%.0f%%), PSNR gain %.2f dB", before, after,
                 100 * after / before, gain)};
}

Outcome GrainSuppressionAndRestoration() {
  constexpr uint32_t kPipelineSeed = 1;
  constexpr uint32_t kFixtureSeed = kPipelineSeed + 1000;
  const Frame clean = SmoothFixture(352, 288, 20);
  const auto fixture_db = SharedDatabase(kFixtureSeed);
  SynthesisConfig fixture_synthesis;
  fixture_synthesis.master_seed = kFixtureSeed;
  std::vector<Frame> source;
  for (int i = 0; i < 9; ++i) {
    source.push_back(ApplyGrain(clean, OneInterval(16, 12, 12, 5), *fixture_db, i,
                                fixture_synthesis));
  }
  ToolchainConfig config;
  config.codec.quant_step = 64;
  config.denoise.strength_sigma = 24.0;
  config.denoise.search_range = 1;
  config.synthesis.master_seed = kPipelineSeed;
  const ToolchainRecord def = RunToolchain(source, ToolchainMode::kDefault, config).record;
  const ToolchainRecord prop = RunToolchain(source, ToolchainMode::kProposed, config).record;
  const double def_ratio = def.grain_band_energy / def.source_grain_band_energy;
  const double prop_ratio = prop.grain_band_energy / prop.source_grain_band_energy;
  return {def_ratio < 0.20 && prop_ratio >= 0.70 && prop_ratio <= 1.30,
          Format("default %.1f%% of source (< 20%%), proposed %.1f%% (70..130%%)",
                 100 * def_ratio, 100 * prop_ratio)};
}

Outcome DeltaTArithmetic() {
  const double d = DeltaT(93.08, 100);
  const bool rounded = std::lround(d * 10000) == -692;
  const bool zero = DeltaT(57.5, 57.5) == 0.0;
  return {rounded && zero, Format("delta_t(93.08, 100) = %.4f, delta_t(x, x) = %g", d,
                                  DeltaT(57.5, 57.5))};
}

Outcome PsnrOracle() {
  Frame a(352, 288, 100), b(352, 288, 101);
  for (int c = 1; c < 3; ++c) {
    for (uint8_t& s : b.plane(c).samples()) s = 129;
    for (uint8_t& s : a.plane(c).samples()) s = 128;
  }
  const double off = Psnr(a, b).yuv;
  const double same = Psnr(a, a).yuv;
  return {std::abs(off - 48.13) <= 0.01 && same == 100.0,
          Format("+1 everywhere %.4f dB, identical %.1f dB", off, same)};
}

Outcome ParserRobustness() {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> byte(0, 255);
  int parsed = 0, structured = 0, other = 0;
  for (int i = 0; i < 100000; ++i) {
    std::vector<uint8_t> bytes(byte(rng) % 48);
    for (uint8_t& b : bytes) b = static_cast<uint8_t>(byte(rng));
    try {
      DecodeFgc(bytes);
      ++parsed;
    } catch (const ParseError&) {
      ++structured;
    } catch (...) {
      ++other;
    }
  }
  return {other == 0 && parsed + structured == 100000,
          Format("%d parsed, %d structured errors, %d other", parsed, structured, other)};
}

}  // namespace
}  // namespace filmgrain

int main() {
  using namespace filmgrain;
  const std::vector<Criterion> criteria = {
      {1, "database cardinality", 1, DatabaseCardinality},
      {2, "low-pass mask property", 5, LowPassMask},
      {3, "integer DCT round trip", 5, DctRoundTrip},
      {4, "SEI canonical round trip", 5, SeiRoundTrip},
      {5, "analysis/synthesis consistency", 60, AnalysisSynthesisConsistency},
      {6, "synthesis determinism", 30, SynthesisDeterminism},
      {7, "denoiser efficacy", 60, DenoiserEfficacy},
      {8, "grain suppression and restoration", 120, GrainSuppressionAndRestoration},
      {9, "delta_t arithmetic", 1, DeltaTArithmetic},
      {10, "PSNR oracle", 1, PsnrOracle},
      {11, "parser robustness", 30, ParserRobustness},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = outcome.pass && seconds < c.limit_s;
    if (!pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL",
                c.id, c.name, outcome.detail.c_str(), seconds, c.limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
