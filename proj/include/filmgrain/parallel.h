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

#ifndef FILMGRAIN_PARALLEL_H_
#define FILMGRAIN_PARALLEL_H_

#include <functional>

namespace filmgrain {

// Runs fn(i) for i in [0, count) on up to |workers| threads. Work items must
// not share mutable state; the first exception thrown is rethrown here after
// all workers have stopped.
void ParallelFor(int count, int workers, const std::function<void(int)>& fn);

}  // namespace filmgrain

#endif  // FILMGRAIN_PARALLEL_H_
