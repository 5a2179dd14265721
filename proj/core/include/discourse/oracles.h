// Copyright 2026 The Discourse Analytics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DISCOURSE_ORACLES_H_
#define DISCOURSE_ORACLES_H_

#include <cstddef>

#include "discourse/graph.h"

namespace discourse::synthkit {

inline constexpr std::size_t kMaxBruteForceNodes = 8;

struct BruteForceResult {
  community::Partition partition;
  double modularity = 0.0;
};

// Exhaustive search over every set partition (Bell(8) = 4140 at most).
// Throws std::invalid_argument above kMaxBruteForceNodes nodes.
BruteForceResult BruteForceModularity(const community::WeightedGraph& graph,
                                      double resolution = 1.0);

}  // namespace discourse::synthkit

#endif  // DISCOURSE_ORACLES_H_
