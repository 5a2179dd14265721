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

#ifndef DISCOURSE_COMMUNITY_H_
#define DISCOURSE_COMMUNITY_H_

// Repost graphs per analysis window, ensemble community detection, community
// matching across adjacent windows and influencer-seeded labeling.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "discourse/corpus.h"
#include "discourse/graph.h"
#include "discourse/louvain.h"

namespace discourse::community {

struct RepostGraph {
  corpus::AnalysisWindow window;
  // Sorted user ids; node i of `graph` is nodes[i].
  std::vector<std::string> nodes;
  WeightedGraph graph;
};

// Edge {u, v} weighted by reposts in either direction inside the window.
// Self-reposts are skipped.
RepostGraph BuildRepostGraph(std::span<const corpus::RepostRecord> reposts,
                             const corpus::AnalysisWindow& window);

struct EnsembleConfig {
  int runs = 100;
  // Pairs co-assigned in at least this many runs are linked.
  int agree = 90;
  std::uint64_t base_seed = 1;
  // 0 means hardware concurrency.
  int threads = 0;
  // Above this node count co-assignment is only counted on graph edges.
  std::size_t max_dense_nodes = 4096;
  LouvainOptions louvain;
};

struct CommunitySnapshot {
  int window = 0;
  // Sorted member ids; communities ordered by their smallest member.
  std::vector<std::vector<std::string>> communities;
  std::vector<std::string> unassigned;
};

// Runs Louvain `runs` times with seeds base_seed + r and links node pairs
// that agree in at least `agree` runs. Connected components of size >= 2 of
// the agreement graph are communities; isolated nodes are unassigned.
CommunitySnapshot EnsembleLouvain(const RepostGraph& graph,
                                  const EnsembleConfig& config);

// Normalized mutual information, arithmetic-mean normalization. Two trivial
// partitions score 1.
double NormalizedMutualInformation(std::span<const int> a,
                                   std::span<const int> b);

// Labels for `nodes`: community index, or a fresh label per unassigned node.
Partition SnapshotPartition(const CommunitySnapshot& snapshot,
                            std::span<const std::string> nodes);

enum class EventKind { kBirth, kDeath, kGrow, kShrink, kMerge, kSplit, kPartial };

std::string_view ToString(EventKind kind);

struct Overlap {
  int prev = 0;
  int curr = 0;
  std::size_t shared = 0;
  double forward = 0.0;   // shared / |prev|
  double backward = 0.0;  // shared / |curr|
};

struct EvolutionEvent {
  EventKind kind = EventKind::kBirth;
  int from_window = 0;
  int to_window = 0;
  std::vector<int> predecessors;
  std::vector<int> successors;
  std::vector<Overlap> overlaps;
};

// Classifies how communities of `prev` became those of `curr`. Every
// community on either side lands in exactly one event. Rules, in priority
// order, with theta the match threshold:
//   merge    >= 2 predecessors each supplying >= theta/2 of one successor
//   split    one predecessor sending >= theta/2 of itself to >= 2 successors
//   grow     one-to-one with forward and backward fractions >= theta and
//   /shrink  |curr| >= |prev| (grow) or smaller (shrink)
//   partial  remaining communities with some overlap
//   birth / death  no overlap at all
std::vector<EvolutionEvent> MatchCommunities(const CommunitySnapshot& prev,
                                             const CommunitySnapshot& curr,
                                             double threshold = 0.5);

enum class CommunityLabel {
  kProVaccine,
  kAntiVaccine,
  kLeftWing,
  kRightWing,
  kNews,
  kPet,
  kOther,
};

inline constexpr std::size_t kNumCommunityLabels = 7;

std::string_view ToString(CommunityLabel label);
std::optional<CommunityLabel> ParseCommunityLabel(std::string_view text);

using SeedLists = std::map<CommunityLabel, std::vector<std::string>>;

struct CommunityTimeline {
  CommunityLabel label = CommunityLabel::kOther;
  // Per window: community indices carrying this label and their members.
  std::vector<std::vector<int>> communities;
  std::vector<std::vector<std::string>> members;
};

struct LabelingOptions {
  std::size_t min_seeds = 3;
};

// Each community takes the label whose seed users form the plurality of seeds
// inside it (earlier label on ties) when that count reaches min_seeds, and
// kOther otherwise. One timeline per label, in enum order.
std::vector<CommunityTimeline> LabelTimelines(
    std::span<const CommunitySnapshot> snapshots, const SeedLists& seeds,
    const LabelingOptions& options = {});

// Label of the community holding `user` in `window`, if any.
class AffiliationIndex {
 public:
  AffiliationIndex() = default;
  explicit AffiliationIndex(std::span<const CommunityTimeline> timelines);

  std::optional<CommunityLabel> LabelOf(int window,
                                        const std::string& user) const;
  void Set(int window, const std::string& user, CommunityLabel label);

 private:
  std::map<int, std::unordered_map<std::string, CommunityLabel>> by_window_;
};

// Users ordered by how often others reposted them, most first, ties by id.
std::vector<std::pair<std::string, std::size_t>> TopInfluencers(
    std::span<const corpus::RepostRecord> reposts, std::size_t k);

}  // namespace discourse::community

#endif  // DISCOURSE_COMMUNITY_H_
