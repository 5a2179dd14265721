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

#include <cstdio>
#include <string>

#include "benchmark/benchmark.h"
#include "discourse/community.h"
#include "discourse/louvain.h"
#include "discourse/synthkit.h"

namespace discourse::community {
namespace {

void BM_Louvain(benchmark::State& state) {
  const auto planted = synthkit::PlantedPartitionGraph(
      static_cast<std::size_t>(state.range(0)), 50, 0.3, 0.01, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Louvain(planted.graph, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * planted.graph.NumNodes());
}
BENCHMARK(BM_Louvain)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EnsembleLouvain(benchmark::State& state) {
  const auto planted = synthkit::PlantedPartitionGraph(4, 50, 0.3, 0.01, 1);
  RepostGraph graph;
  for (std::size_t i = 0; i < planted.graph.NumNodes(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%04zu", i);
    graph.nodes.push_back(buf);
  }
  graph.graph = planted.graph;
  EnsembleConfig config;
  config.runs = static_cast<int>(state.range(0));
  config.agree = config.runs * 9 / 10;
  config.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnsembleLouvain(graph, config));
  }
}
BENCHMARK(BM_EnsembleLouvain)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace discourse::community
