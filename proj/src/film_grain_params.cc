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

#include "filmgrain/film_grain_params.h"

#include <sstream>

namespace filmgrain {

bool operator==(const FilmGrainParams& a, const FilmGrainParams& b) {
  if (a.cancel_flag != b.cancel_flag) return false;
  if (a.cancel_flag) return true;
  if (a.model_id != b.model_id || a.blending_mode_id != b.blending_mode_id ||
      a.log2_scale_factor != b.log2_scale_factor ||
      a.comp_model_present != b.comp_model_present ||
      a.persistence_flag != b.persistence_flag) {
    return false;
  }
  for (int c = 0; c < 3; ++c) {
    if (a.comp_model_present[c] && !(a.components[c] == b.components[c])) {
      return false;
    }
  }
  return true;
}

std::string Describe(const FilmGrainParams& params) {
  std::ostringstream out;
  if (params.cancel_flag) {
    out << "cancel\n";
    return out.str();
  }
  out << "model_id=" << params.model_id
      << (params.model_id == kFrequencyFilteringModel ? "" : " (unsupported)")
      << " blending_mode_id=" << params.blending_mode_id
      << " log2_scale_factor=" << params.log2_scale_factor
      << " persistence_flag=" << (params.persistence_flag ? 1 : 0) << "\n";
  static constexpr const char* kNames[3] = {"Y", "Cb", "Cr"};
  for (int c = 0; c < 3; ++c) {
    if (!params.comp_model_present[c]) continue;
    const ComponentModel& model = params.components[c];
    out << "  component " << kNames[c] << ": " << model.intervals.size()
        << " interval(s), " << model.num_model_values << " value(s) each\n";
    for (const IntensityInterval& iv : model.intervals) {
      out << "    [" << iv.lower_bound << "," << iv.upper_bound
          << "] scaling=" << iv.scaling_value << " h_cutoff=" << iv.h_cutoff
          << " v_cutoff=" << iv.v_cutoff << "\n";
    }
  }
  return out.str();
}

}  // namespace filmgrain
