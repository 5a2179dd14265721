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

#ifndef DISCOURSE_GRAPH_H_
#define DISCOURSE_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace discourse::community {

using NodeId = std::int32_t;

// Undirected weighted graph in compressed adjacency form. Self-loops are kept
// apart from the neighbor lists; they appear after aggregation steps.
class WeightedGraph {
 public:
  struct Neighbor {
    NodeId node;
    double weight;
  };

  class Builder {
   public:
    explicit Builder(std::size_t num_nodes) : num_nodes_(num_nodes) {}
    // Accumulates weight on {u, v}; u == v adds to the self-loop.
    void AddEdge(NodeId u, NodeId v, double weight);
    WeightedGraph Build() &&;

   private:
    std::size_t num_nodes_;
    std::map<std::pair<NodeId, NodeId>, double> edges_;
  };

  WeightedGraph() = default;

  std::size_t NumNodes() const { return self_loops_.size(); }
  std::size_t NumEdges() const { return neighbors_.size() / 2; }

  std::span<const Neighbor> Neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u],
            neighbors_.data() + offsets_[u + 1]};
  }
  double SelfLoop(NodeId u) const { return self_loops_[u]; }
  // Sum of incident weights, self-loop counted twice.
  double Degree(NodeId u) const { return degrees_[u]; }
  // Sum of edge weights including self-loops (the usual m).
  double TotalWeight() const { return total_weight_; }

 private:
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Neighbor> neighbors_;
  std::vector<double> self_loops_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
};

// Community label per node.
using Partition = std::vector<int>;

// Newman-Girvan modularity with a resolution multiplier on the null model.
double Modularity(const WeightedGraph& graph, std::span<const int> partition,
                  double resolution = 1.0);

// Relabels communities to 0..k-1 in order of first appearance.
Partition Canonicalize(std::span<const int> partition);

}  // namespace discourse::community

#endif  // DISCOURSE_GRAPH_H_
