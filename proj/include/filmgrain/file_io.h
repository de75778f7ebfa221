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

#ifndef FILMGRAIN_FILE_IO_H_
#define FILMGRAIN_FILE_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace filmgrain {

std::vector<uint8_t> ReadFileBytes(const std::string& path);

// Writes to a temporary sibling and renames it over |path|, so readers never
// observe a partially written file.
void WriteFileAtomically(const std::string& path,
                         std::span<const uint8_t> bytes);

}  // namespace filmgrain

#endif  // FILMGRAIN_FILE_IO_H_
