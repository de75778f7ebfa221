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

#ifndef FILMGRAIN_FILM_GRAIN_PARAMS_H_
#define FILMGRAIN_FILM_GRAIN_PARAMS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace filmgrain {

inline constexpr int kFrequencyFilteringModel = 0;
inline constexpr int kAdditiveBlending = 0;

// Cutoff range covered by the pattern database: 13 values per axis.
inline constexpr int kMinCutoff = 2;
inline constexpr int kMaxCutoff = 14;
inline constexpr int kCutoffCount = kMaxCutoff - kMinCutoff + 1;

// Model values carried per interval: scaling, horizontal and vertical cutoff.
inline constexpr int kModelValuesPerInterval = 3;
inline constexpr int kMaxIntervals = 256;

struct IntensityInterval {
  int lower_bound = 0;
  int upper_bound = 255;
  int32_t scaling_value = 0;  // comp_model_value[c][i][0]
  int32_t h_cutoff = 8;       // comp_model_value[c][i][1]
  int32_t v_cutoff = 8;       // comp_model_value[c][i][2]

  bool operator==(const IntensityInterval&) const = default;
};

struct ComponentModel {
  // Number of comp_model_value entries coded per interval, 1..3. Values not
  // coded keep their defaults (cutoffs 8, vertical = horizontal).
  int num_model_values = kModelValuesPerInterval;
  std::vector<IntensityInterval> intervals;

  bool operator==(const ComponentModel&) const = default;
};

// One Film Grain Characteristics parameter set (frequency-filtering syntax).
struct FilmGrainParams {
  bool cancel_flag = false;
  int model_id = kFrequencyFilteringModel;
  int blending_mode_id = kAdditiveBlending;
  int log2_scale_factor = 0;
  std::array<bool, 3> comp_model_present = {false, false, false};
  std::array<ComponentModel, 3> components;
  bool persistence_flag = false;

  static FilmGrainParams Cancelled() {
    FilmGrainParams params;
    params.cancel_flag = true;
    return params;
  }

  // Structural equality over coded fields only: a cancelled set compares
  // equal to any other cancelled set, and absent components are ignored.
  friend bool operator==(const FilmGrainParams& a, const FilmGrainParams& b);
};

// Multi-line human-readable description, one interval per line.
std::string Describe(const FilmGrainParams& params);

}  // namespace filmgrain

#endif  // FILMGRAIN_FILM_GRAIN_PARAMS_H_
