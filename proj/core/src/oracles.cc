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

#include "discourse/oracles.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace discourse::synthkit {

BruteForceResult BruteForceModularity(const community::WeightedGraph& graph,
                                      double resolution) {
  const std::size_t n = graph.NumNodes();
  if (n > kMaxBruteForceNodes) {
    throw std::invalid_argument("brute-force modularity is limited to 8 nodes");
  }
  BruteForceResult best;
  if (n == 0) return best;

  // Restricted growth strings: labels[i] <= 1 + max(labels[0..i-1]).
  std::vector<int> labels(n, 0);
  std::vector<int> prefix_max(n, 0);
  bool first = true;
  while (true) {
    const double q = community::Modularity(graph, labels, resolution);
    if (first || q > best.modularity) {
      best.modularity = q;
      best.partition = labels;
      first = false;
    }
    // Next string: bump the rightmost position that can grow.
    std::size_t i = n - 1;
    while (i > 0 && labels[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return best;
}

}  // namespace discourse::synthkit
