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


#ifndef DISCOURSE_TESTS_TESTING_FIXTURES_H_
#define DISCOURSE_TESTS_TESTING_FIXTURES_H_

// Helpers shared by the unit and acceptance tests: scratch directories,
// record builders, small file utilities and reference implementations that
// are written independently of the library code they check.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "discourse/community.h"
#include "discourse/corpus.h"
#include "discourse/graph.h"
#include "discourse/pipeline.h"
#include "discourse/synthkit.h"
#include "discourse/types.h"

namespace discourse::testing {

// A fresh directory removed (recursively) on destruction.
class ScratchDir {
 public:
  ScratchDir();
  ~ScratchDir();
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

void WriteText(const std::filesystem::path& path, const std::string& text);
std::string ReadText(const std::filesystem::path& path);

corpus::PostRecord Post(std::string id, std::string author, Timestamp ts,
                        std::vector<std::string> tokens = {},
                        Opinion opinion = Opinion::kNeutral,
                        Emotion emotion = Emotion::kNeutral);
corpus::RepostRecord Repost(std::string reposter, std::string author,
                            Timestamp ts);

// Undirected unit-weight graph from an edge list.
community::WeightedGraph GraphFromEdges(
    std::size_t num_nodes,
    const std::vector<std::pair<community::NodeId, community::NodeId>>& edges);

// Modularity straight from the textbook double sum over node pairs,
// Q = 1/(2m) * sum_ij [A_ij - k_i k_j / (2m)] delta(c_i, c_j), on a dense
// adjacency matrix.
double ReferenceModularity(const community::WeightedGraph& graph,
                           const std::vector<int>& partition);

// Opinion score by walking an explicit list of labeled posts: +1 for pro,
// -1 for anti, 0 for neutral, averaged over posts.
double ReferenceOpinionScore(int pro, int neutral, int anti);

// Whether two labelings describe the same grouping.
bool SamePartition(const std::vector<int>& a, const std::vector<int>& b);

// Six snapshots whose five transitions exercise every evolution kind:
//   0 -> 1  grow, shrink, death and three births
//   1 -> 2  two equal halves merging, the rest unchanged
//   2 -> 3  the merged community splitting back
//   3 -> 4  a community losing most of its members to newcomers (partial)
//   4 -> 5  identical snapshots
struct EvolutionScenario {
  std::vector<community::CommunitySnapshot> snapshots;
  // Per transition, the sorted event kinds expected.
  std::vector<std::vector<community::EventKind>> expected;
};
EvolutionScenario MakeEvolutionScenario();

// Six months of posts with two bursts, three repost blocks and four
// opinion-shift cohorts: two move to anti with Anger rising from .1 to .3, two
// move to pro with Anger flat at .1. Each cohort carries its own dominant
// secondary emotion so that clustering finds two groups per direction.
synthkit::SynthSpec ShiftCohortSpec(std::uint64_t seed);

// Writes the corpus of `spec` under `dir` and returns a pipeline config that
// reads it and writes to `dir / "out"`.
pipeline::PipelineConfig WriteFixtureCorpus(const synthkit::SynthSpec& spec,
                                            const std::filesystem::path& dir);

}  // namespace discourse::testing

#endif  // DISCOURSE_TESTS_TESTING_FIXTURES_H_
