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

#include "discourse/graph.h"

#include <stdexcept>
#include <unordered_map>

namespace discourse::community {

void WeightedGraph::Builder::AddEdge(NodeId u, NodeId v, double weight) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= num_nodes_ ||
      static_cast<std::size_t>(v) >= num_nodes_) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (u > v) std::swap(u, v);
  edges_[{u, v}] += weight;
}

WeightedGraph WeightedGraph::Builder::Build() && {
  WeightedGraph g;
  g.self_loops_.assign(num_nodes_, 0.0);
  g.degrees_.assign(num_nodes_, 0.0);
  std::vector<std::size_t> counts(num_nodes_, 0);
  for (const auto& [e, w] : edges_) {
    g.total_weight_ += w;
    if (e.first == e.second) {
      g.self_loops_[e.first] += w;
      g.degrees_[e.first] += 2.0 * w;
    } else {
      ++counts[e.first];
      ++counts[e.second];
      g.degrees_[e.first] += w;
      g.degrees_[e.second] += w;
    }
  }
  g.offsets_.assign(num_nodes_ + 1, 0);
  for (std::size_t u = 0; u < num_nodes_; ++u) {
    g.offsets_[u + 1] = g.offsets_[u] + counts[u];
  }
  g.neighbors_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [e, w] : edges_) {
    if (e.first == e.second) continue;
    g.neighbors_[fill[e.first]++] = {e.second, w};
    g.neighbors_[fill[e.second]++] = {e.first, w};
  }
  return g;
}

double Modularity(const WeightedGraph& graph, std::span<const int> partition,
                  double resolution) {
  if (partition.size() != graph.NumNodes()) {
    throw std::invalid_argument("partition size does not match graph");
  }
  const double m2 = 2.0 * graph.TotalWeight();
  if (m2 <= 0.0) return 0.0;
  const Partition labels = Canonicalize(partition);
  std::vector<double> internal(labels.size(), 0.0);
  std::vector<double> total(labels.size(), 0.0);
  for (std::size_t u = 0; u < graph.NumNodes(); ++u) {
    const NodeId node = static_cast<NodeId>(u);
    const int c = labels[u];
    total[c] += graph.Degree(node);
    internal[c] += 2.0 * graph.SelfLoop(node);
    for (const auto& nb : graph.Neighbors(node)) {
      if (labels[nb.node] == c) internal[c] += nb.weight;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    q += internal[c] / m2 - resolution * (total[c] / m2) * (total[c] / m2);
  }
  return q;
}

Partition Canonicalize(std::span<const int> partition) {
  std::unordered_map<int, int> relabel;
  Partition out(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    auto [it, inserted] =
        relabel.emplace(partition[i], static_cast<int>(relabel.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace discourse::community
