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

#ifndef DISCOURSE_LOUVAIN_H_
#define DISCOURSE_LOUVAIN_H_

#include <cstdint>

#include "discourse/graph.h"

namespace discourse::community {

struct LouvainOptions {
  double resolution = 1.0;
  // A local-moving pass that improves modularity by no more than this ends
  // the level.
  double min_gain = 1e-9;
};

// Multi-level Louvain modularity optimization. Node visit order at every
// level is a permutation drawn from `seed`. The returned labels are
// canonical (0..k-1 by first appearance). Throws std::invalid_argument for a
// graph without edges.
Partition Louvain(const WeightedGraph& graph, std::uint64_t seed,
                  const LouvainOptions& options = {});

}  // namespace discourse::community

#endif  // DISCOURSE_LOUVAIN_H_
