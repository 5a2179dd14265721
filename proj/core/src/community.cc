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

#include "discourse/community.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace discourse::community {

namespace {

constexpr std::array<std::string_view, kNumCommunityLabels> kLabelNames = {
    "pro-vaccine", "anti-vaccine", "left-wing", "right-wing",
    "news",        "pet",          "other"};

constexpr std::array<std::string_view, 7> kEventNames = {
    "birth", "death", "grow", "shrink", "merge", "split", "partial"};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Partition> RunEnsemble(const WeightedGraph& graph,
                                   const EnsembleConfig& config) {
  std::vector<Partition> runs(static_cast<std::size_t>(config.runs));
  unsigned threads = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.runs));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < config.runs; r = next++) {
      runs[r] = Louvain(graph, config.base_seed + static_cast<std::uint64_t>(r),
                        config.louvain);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return runs;
}

}  // namespace

RepostGraph BuildRepostGraph(std::span<const corpus::RepostRecord> reposts,
                             const corpus::AnalysisWindow& window) {
  RepostGraph out;
  out.window = window;
  std::vector<const corpus::RepostRecord*> inside;
  std::set<std::string> users;
  for (const corpus::RepostRecord& r : reposts) {
    if (r.timestamp < window.start || r.timestamp >= window.end) continue;
    if (r.reposter_id == r.original_author_id) continue;
    inside.push_back(&r);
    users.insert(r.reposter_id);
    users.insert(r.original_author_id);
  }
  out.nodes.assign(users.begin(), users.end());
  auto id_of = [&](const std::string& user) {
    return static_cast<NodeId>(
        std::lower_bound(out.nodes.begin(), out.nodes.end(), user) -
        out.nodes.begin());
  };
  WeightedGraph::Builder builder(out.nodes.size());
  for (const corpus::RepostRecord* r : inside) {
    builder.AddEdge(id_of(r->reposter_id), id_of(r->original_author_id), 1.0);
  }
  out.graph = std::move(builder).Build();
  return out;
}

CommunitySnapshot EnsembleLouvain(const RepostGraph& graph,
                                  const EnsembleConfig& config) {
  if (config.runs < 1 || config.agree < 1 || config.agree > config.runs ||
      config.runs > 65535) {
    throw std::invalid_argument("ensemble needs 1 <= agree <= runs <= 65535");
  }
  const WeightedGraph& g = graph.graph;
  if (g.NumNodes() == 0 || g.TotalWeight() <= 0.0) {
    throw std::invalid_argument("ensemble needs a graph with edges");
  }
  const std::size_t n = g.NumNodes();
  const std::vector<Partition> runs = RunEnsemble(g, config);

  DisjointSets sets(n);
  std::vector<bool> linked(n, false);
  auto link = [&](std::size_t u, std::size_t v) {
    sets.Union(u, v);
    linked[u] = linked[v] = true;
  };
  if (n <= config.max_dense_nodes) {
    // Upper-triangular co-assignment counts, row u holds v > u.
    std::vector<std::uint16_t> counts(n * (n - 1) / 2, 0);
    auto row_offset = [n](std::size_t u) { return u * (2 * n - u - 1) / 2; };
    std::vector<std::vector<std::size_t>> groups;
    for (const Partition& p : runs) {
      const int k = *std::max_element(p.begin(), p.end()) + 1;
      groups.assign(static_cast<std::size_t>(k), {});
      for (std::size_t u = 0; u < n; ++u) groups[p[u]].push_back(u);
      for (const auto& members : groups) {
        for (std::size_t i = 0; i < members.size(); ++i) {
          const std::size_t base = row_offset(members[i]) - members[i] - 1;
          for (std::size_t j = i + 1; j < members.size(); ++j) {
            ++counts[base + members[j]];
          }
        }
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t base = row_offset(u) - u - 1;
      for (std::size_t v = u + 1; v < n; ++v) {
        if (counts[base + v] >= config.agree) link(u, v);
      }
    }
  } else {
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& nb : g.Neighbors(static_cast<NodeId>(u))) {
        const std::size_t v = static_cast<std::size_t>(nb.node);
        if (v <= u) continue;
        int agree = 0;
        for (const Partition& p : runs) agree += p[u] == p[v] ? 1 : 0;
        if (agree >= config.agree) link(u, v);
      }
    }
  }

  CommunitySnapshot snapshot;
  snapshot.window = graph.window.index;
  std::vector<int> component_of(n, -1);
  for (std::size_t u = 0; u < n; ++u) {
    if (!linked[u]) {
      snapshot.unassigned.push_back(graph.nodes[u]);
      continue;
    }
    const std::size_t root = sets.Find(u);
    if (component_of[root] < 0) {
      component_of[root] = static_cast<int>(snapshot.communities.size());
      snapshot.communities.emplace_back();
    }
    snapshot.communities[component_of[root]].push_back(graph.nodes[u]);
  }
  return snapshot;
}

double NormalizedMutualInformation(std::span<const int> a,
                                   std::span<const int> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("NMI needs two labelings of the same nodes");
  }
  const Partition ca = Canonicalize(a);
  const Partition cb = Canonicalize(b);
  const std::size_t ka = *std::max_element(ca.begin(), ca.end()) + 1;
  const std::size_t kb = *std::max_element(cb.begin(), cb.end()) + 1;
  std::vector<double> pa(ka, 0.0), pb(kb, 0.0);
  std::map<std::pair<int, int>, double> joint;
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[ca[i]] += 1.0 / n;
    pb[cb[i]] += 1.0 / n;
    joint[{ca[i], cb[i]}] += 1.0 / n;
  }
  auto entropy = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) {
      if (x > 0.0) h -= x * std::log(x);
    }
    return h;
  };
  const double ha = entropy(pa);
  const double hb = entropy(pb);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, pab] : joint) {
    mi += pab * std::log(pab / (pa[key.first] * pb[key.second]));
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

Partition SnapshotPartition(const CommunitySnapshot& snapshot,
                            std::span<const std::string> nodes) {
  std::unordered_map<std::string, int> label;
  for (std::size_t c = 0; c < snapshot.communities.size(); ++c) {
    for (const std::string& u : snapshot.communities[c]) {
      label[u] = static_cast<int>(c);
    }
  }
  Partition out(nodes.size());
  int fresh = static_cast<int>(snapshot.communities.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto it = label.find(nodes[i]);
    out[i] = it != label.end() ? it->second : fresh++;
  }
  return out;
}

std::string_view ToString(EventKind kind) {
  return kEventNames[static_cast<std::size_t>(kind)];
}

std::vector<EvolutionEvent> MatchCommunities(const CommunitySnapshot& prev,
                                             const CommunitySnapshot& curr,
                                             double threshold) {
  const std::size_t np = prev.communities.size();
  const std::size_t nc = curr.communities.size();
  std::unordered_map<std::string, int> curr_of;
  for (std::size_t j = 0; j < nc; ++j) {
    for (const std::string& u : curr.communities[j]) {
      curr_of[u] = static_cast<int>(j);
    }
  }
  // shared[a][j], sparse per predecessor.
  std::vector<std::map<int, std::size_t>> shared(np);
  for (std::size_t a = 0; a < np; ++a) {
    for (const std::string& u : prev.communities[a]) {
      auto it = curr_of.find(u);
      if (it != curr_of.end()) ++shared[a][it->second];
    }
  }
  std::vector<std::map<int, std::size_t>> shared_by_curr(nc);
  for (std::size_t a = 0; a < np; ++a) {
    for (const auto& [j, s] : shared[a]) shared_by_curr[j][static_cast<int>(a)] = s;
  }
  auto overlap = [&](int a, int j) {
    Overlap o;
    o.prev = a;
    o.curr = j;
    auto it = shared[a].find(j);
    o.shared = it == shared[a].end() ? 0 : it->second;
    o.forward = static_cast<double>(o.shared) /
                static_cast<double>(prev.communities[a].size());
    o.backward = static_cast<double>(o.shared) /
                 static_cast<double>(curr.communities[j].size());
    return o;
  };

  std::vector<bool> used_prev(np, false), used_curr(nc, false);
  std::vector<EvolutionEvent> events;
  auto emit = [&](EventKind kind, std::vector<int> preds,
                  std::vector<int> succs) {
    EvolutionEvent e;
    e.kind = kind;
    e.from_window = prev.window;
    e.to_window = curr.window;
    for (int a : preds) used_prev[a] = true;
    for (int j : succs) used_curr[j] = true;
    for (int a : preds) {
      for (int j : succs) {
        Overlap o = overlap(a, j);
        if (o.shared > 0) e.overlaps.push_back(o);
      }
    }
    e.predecessors = std::move(preds);
    e.successors = std::move(succs);
    events.push_back(std::move(e));
  };
  const double half = threshold / 2.0;

  for (std::size_t j = 0; j < nc; ++j) {
    std::vector<int> preds;
    for (const auto& [a, s] : shared_by_curr[j]) {
      if (!used_prev[a] && overlap(a, static_cast<int>(j)).backward >= half) {
        preds.push_back(a);
      }
    }
    if (preds.size() >= 2) {
      emit(EventKind::kMerge, std::move(preds), {static_cast<int>(j)});
    }
  }
  for (std::size_t a = 0; a < np; ++a) {
    if (used_prev[a]) continue;
    std::vector<int> succs;
    for (const auto& [j, s] : shared[a]) {
      if (!used_curr[j] && overlap(static_cast<int>(a), j).forward >= half) {
        succs.push_back(j);
      }
    }
    if (succs.size() >= 2) {
      emit(EventKind::kSplit, {static_cast<int>(a)}, std::move(succs));
    }
  }
  for (std::size_t a = 0; a < np; ++a) {
    if (used_prev[a]) continue;
    int best = -1;
    std::size_t best_shared = 0;
    for (const auto& [j, s] : shared[a]) {
      if (used_curr[j]) continue;
      const Overlap o = overlap(static_cast<int>(a), j);
      if (o.forward >= threshold && o.backward >= threshold &&
          s > best_shared) {
        best = j;
        best_shared = s;
      }
    }
    if (best < 0) continue;
    const EventKind kind =
        curr.communities[best].size() >= prev.communities[a].size()
            ? EventKind::kGrow
            : EventKind::kShrink;
    emit(kind, {static_cast<int>(a)}, {best});
  }

  // Leftovers: overlapping ones group into partial events by connectivity
  // among themselves; the rest are deaths and births.
  DisjointSets sets(np + nc);
  for (std::size_t a = 0; a < np; ++a) {
    if (used_prev[a]) continue;
    for (const auto& [j, s] : shared[a]) {
      if (!used_curr[j]) sets.Union(a, np + static_cast<std::size_t>(j));
    }
  }
  std::map<std::size_t, std::pair<std::vector<int>, std::vector<int>>> groups;
  for (std::size_t a = 0; a < np; ++a) {
    if (used_prev[a]) continue;
    if (shared[a].empty()) {
      emit(EventKind::kDeath, {static_cast<int>(a)}, {});
    } else {
      groups[sets.Find(a)].first.push_back(static_cast<int>(a));
    }
  }
  for (std::size_t j = 0; j < nc; ++j) {
    if (used_curr[j]) continue;
    if (shared_by_curr[j].empty()) {
      emit(EventKind::kBirth, {}, {static_cast<int>(j)});
    } else {
      groups[sets.Find(np + j)].second.push_back(static_cast<int>(j));
    }
  }
  for (auto& [root, members] : groups) {
    emit(EventKind::kPartial, std::move(members.first),
         std::move(members.second));
  }
  return events;
}

std::string_view ToString(CommunityLabel label) {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<CommunityLabel> ParseCommunityLabel(std::string_view text) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == text) return static_cast<CommunityLabel>(i);
  }
  return std::nullopt;
}

std::vector<CommunityTimeline> LabelTimelines(
    std::span<const CommunitySnapshot> snapshots, const SeedLists& seeds,
    const LabelingOptions& options) {
  std::unordered_map<std::string, std::vector<CommunityLabel>> seed_labels;
  for (const auto& [label, users] : seeds) {
    for (const std::string& u : users) seed_labels[u].push_back(label);
  }
  int num_windows = 0;
  for (const CommunitySnapshot& s : snapshots) {
    num_windows = std::max(num_windows, s.window + 1);
  }
  std::vector<CommunityTimeline> timelines(kNumCommunityLabels);
  for (std::size_t l = 0; l < kNumCommunityLabels; ++l) {
    timelines[l].label = static_cast<CommunityLabel>(l);
    timelines[l].communities.resize(num_windows);
    timelines[l].members.resize(num_windows);
  }
  for (const CommunitySnapshot& s : snapshots) {
    for (std::size_t c = 0; c < s.communities.size(); ++c) {
      std::array<std::size_t, kNumCommunityLabels> counts{};
      for (const std::string& u : s.communities[c]) {
        auto it = seed_labels.find(u);
        if (it == seed_labels.end()) continue;
        for (CommunityLabel l : it->second) ++counts[static_cast<std::size_t>(l)];
      }
      std::size_t best = static_cast<std::size_t>(CommunityLabel::kOther);
      std::size_t best_count = 0;
      for (std::size_t l = 0; l + 1 < kNumCommunityLabels; ++l) {
        if (counts[l] > best_count) {
          best = l;
          best_count = counts[l];
        }
      }
      if (best_count < options.min_seeds) {
        best = static_cast<std::size_t>(CommunityLabel::kOther);
      }
      CommunityTimeline& t = timelines[best];
      t.communities[s.window].push_back(static_cast<int>(c));
      auto& members = t.members[s.window];
      members.insert(members.end(), s.communities[c].begin(),
                     s.communities[c].end());
      std::sort(members.begin(), members.end());
    }
  }
  return timelines;
}

AffiliationIndex::AffiliationIndex(
    std::span<const CommunityTimeline> timelines) {
  for (const CommunityTimeline& t : timelines) {
    for (std::size_t w = 0; w < t.members.size(); ++w) {
      for (const std::string& u : t.members[w]) {
        Set(static_cast<int>(w), u, t.label);
      }
    }
  }
}

std::optional<CommunityLabel> AffiliationIndex::LabelOf(
    int window, const std::string& user) const {
  auto w = by_window_.find(window);
  if (w == by_window_.end()) return std::nullopt;
  auto it = w->second.find(user);
  if (it == w->second.end()) return std::nullopt;
  return it->second;
}

void AffiliationIndex::Set(int window, const std::string& user,
                           CommunityLabel label) {
  by_window_[window][user] = label;
}

std::vector<std::pair<std::string, std::size_t>> TopInfluencers(
    std::span<const corpus::RepostRecord> reposts, std::size_t k) {
  std::map<std::string, std::size_t> times;
  for (const corpus::RepostRecord& r : reposts) {
    if (r.reposter_id != r.original_author_id) ++times[r.original_author_id];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(times.begin(),
                                                          times.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

}  // namespace discourse::community
