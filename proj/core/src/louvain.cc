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

#include "discourse/louvain.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace discourse::community {

namespace {

// Greedy node moves starting from `initial` (singletons when empty). A node
// may join a neighboring community or an empty one. Returns community per
// node and whether any node changed community.
std::pair<Partition, bool> LocalMoving(const WeightedGraph& g,
                                       std::mt19937_64& rng,
                                       const LouvainOptions& options,
                                       const Partition& initial = {}) {
  const std::size_t n = g.NumNodes();
  const double m2 = 2.0 * g.TotalWeight();
  Partition comm = initial;
  if (comm.empty()) {
    comm.resize(n);
    std::iota(comm.begin(), comm.end(), 0);
  }
  std::vector<double> tot(n, 0.0);
  std::vector<std::size_t> size(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    tot[comm[i]] += g.Degree(static_cast<NodeId>(i));
    ++size[comm[i]];
  }
  std::vector<int> empty;
  for (std::size_t c = n; c-- > 0;) {
    if (size[c] == 0) empty.push_back(static_cast<int>(c));
  }

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, -1.0);
  std::vector<int> touched;
  bool any_moved = false;
  double q_prev = Modularity(g, comm, options.resolution);
  while (true) {
    std::size_t moves = 0;
    for (NodeId u : order) {
      const int own = comm[u];
      const double ku = g.Degree(u);
      touched.clear();
      link[own] = 0.0;
      touched.push_back(own);
      for (const auto& nb : g.Neighbors(u)) {
        const int c = comm[nb.node];
        if (link[c] < 0.0) {
          link[c] = 0.0;
          touched.push_back(c);
        }
        link[c] += nb.weight;
      }
      tot[own] -= ku;
      --size[own];
      int best = own;
      double best_gain = link[own] - options.resolution * tot[own] * ku / m2;
      for (int c : touched) {
        const double gain = link[c] - options.resolution * tot[c] * ku / m2;
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      // Leaving for an empty community gains nothing from links and pays
      // nothing to the null model.
      if (best_gain < 0.0 && size[own] > 0 && !empty.empty()) {
        best = empty.back();
        empty.pop_back();
      }
      if (size[own] == 0 && best != own) empty.push_back(own);
      tot[best] += ku;
      ++size[best];
      if (best != own) {
        comm[u] = best;
        ++moves;
      }
      for (int c : touched) link[c] = -1.0;
    }
    if (moves == 0) break;
    any_moved = true;
    const double q = Modularity(g, comm, options.resolution);
    if (q - q_prev <= options.min_gain) break;
    q_prev = q;
  }
  return {std::move(comm), any_moved};
}

WeightedGraph Aggregate(const WeightedGraph& g, const Partition& comm,
                        std::size_t k) {
  WeightedGraph::Builder builder(k);
  for (std::size_t u = 0; u < g.NumNodes(); ++u) {
    const NodeId node = static_cast<NodeId>(u);
    if (g.SelfLoop(node) > 0.0) {
      builder.AddEdge(comm[u], comm[u], g.SelfLoop(node));
    }
    for (const auto& nb : g.Neighbors(node)) {
      if (nb.node > node) builder.AddEdge(comm[u], comm[nb.node], nb.weight);
    }
  }
  return std::move(builder).Build();
}

}  // namespace

Partition Louvain(const WeightedGraph& graph, std::uint64_t seed,
                  const LouvainOptions& options) {
  if (graph.NumNodes() == 0 || graph.TotalWeight() <= 0.0) {
    throw std::invalid_argument("Louvain needs a graph with edges");
  }
  std::mt19937_64 rng(seed);
  Partition membership(graph.NumNodes());
  std::iota(membership.begin(), membership.end(), 0);

  while (true) {
    // Multi-level phase on the graph aggregated by the current membership.
    std::size_t k = static_cast<std::size_t>(
                        *std::max_element(membership.begin(), membership.end())) +
                    1;
    WeightedGraph level =
        k == graph.NumNodes() ? graph : Aggregate(graph, membership, k);
    while (true) {
      auto [comm, moved] = LocalMoving(level, rng, options);
      if (!moved) break;
      comm = Canonicalize(comm);
      k = static_cast<std::size_t>(*std::max_element(comm.begin(), comm.end())) +
          1;
      for (int& m : membership) m = comm[m];
      if (k == level.NumNodes()) break;
      level = Aggregate(level, comm, k);
    }

    // Refinement: single nodes may still improve on the coarse solution;
    // any gain restarts aggregation from the refined partition.
    const double q = Modularity(graph, membership, options.resolution);
    auto [refined, moved] = LocalMoving(graph, rng, options, membership);
    if (!moved ||
        Modularity(graph, refined, options.resolution) - q <= options.min_gain) {
      break;
    }
    membership = Canonicalize(refined);
  }
  return Canonicalize(membership);
}

}  // namespace discourse::community
