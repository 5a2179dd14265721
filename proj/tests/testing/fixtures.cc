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

#include "testing/fixtures.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace discourse::testing {

ScratchDir::ScratchDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  const std::string name = "discourse_test_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter++) + "_" +
                           std::to_string(rd());
  path_ = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(path_);
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

corpus::PostRecord Post(std::string id, std::string author, Timestamp ts,
                        std::vector<std::string> tokens, Opinion opinion,
                        Emotion emotion) {
  corpus::PostRecord p;
  p.post_id = std::move(id);
  p.author_id = std::move(author);
  p.timestamp = ts;
  p.tokens = std::move(tokens);
  p.opinion = opinion;
  p.emotion = emotion;
  return p;
}

corpus::RepostRecord Repost(std::string reposter, std::string author,
                            Timestamp ts) {
  corpus::RepostRecord r;
  r.reposter_id = std::move(reposter);
  r.original_author_id = std::move(author);
  r.timestamp = ts;
  return r;
}

community::WeightedGraph GraphFromEdges(
    std::size_t num_nodes,
    const std::vector<std::pair<community::NodeId, community::NodeId>>& edges) {
  community::WeightedGraph::Builder builder(num_nodes);
  for (const auto& [u, v] : edges) builder.AddEdge(u, v, 1.0);
  return std::move(builder).Build();
}

double ReferenceModularity(const community::WeightedGraph& graph,
                           const std::vector<int>& partition) {
  const std::size_t n = graph.NumNodes();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& [v, w] : graph.Neighbors(static_cast<community::NodeId>(u))) {
      a[u][static_cast<std::size_t>(v)] = w;
    }
    // A self-loop of weight w contributes 2w to the diagonal.
    a[u][u] = 2.0 * graph.SelfLoop(static_cast<community::NodeId>(u));
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (partition[i] == partition[j]) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

double ReferenceOpinionScore(int pro, int neutral, int anti) {
  std::vector<int> posts;
  posts.insert(posts.end(), pro, +1);
  posts.insert(posts.end(), neutral, 0);
  posts.insert(posts.end(), anti, -1);
  long sum = 0;
  for (int p : posts) sum += p;
  return static_cast<double>(sum) / static_cast<double>(posts.size());
}

bool SamePartition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> forward;
  std::map<int, int> backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [f, f_new] = forward.emplace(a[i], b[i]);
    auto [g, g_new] = backward.emplace(b[i], a[i]);
    if (f->second != b[i] || g->second != a[i]) return false;
  }
  return true;
}

namespace {

std::vector<std::string> Users(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(prefix + std::to_string(100 + i));
  return out;
}

std::vector<std::string> Join(std::vector<std::string> a,
                              const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

community::CommunitySnapshot Snapshot(int window,
                                      std::vector<std::vector<std::string>> comms) {
  community::CommunitySnapshot s;
  s.window = window;
  for (auto& c : comms) std::sort(c.begin(), c.end());
  std::sort(comms.begin(), comms.end());
  s.communities = std::move(comms);
  return s;
}

}  // namespace

EvolutionScenario MakeEvolutionScenario() {
  using community::EventKind;
  const auto a = Users("a", 1, 10);
  const auto a_grown = Join(a, Users("x", 1, 2));
  const auto b = Users("b", 1, 10);
  const auto b_shrunk = Users("b", 1, 8);
  const auto d = Users("d", 1, 4);
  const auto n = Users("n", 1, 5);
  const auto p = Users("p", 1, 6);
  const auto q = Users("q", 1, 6);
  const auto merged = Join(p, q);
  const auto partial = Join(Users("a", 1, 4), Users("y", 1, 8));

  EvolutionScenario s;
  s.snapshots = {
      Snapshot(0, {a, b, d}),
      Snapshot(1, {a_grown, b_shrunk, n, p, q}),
      Snapshot(2, {a_grown, b_shrunk, n, merged}),
      Snapshot(3, {a_grown, b_shrunk, n, p, q}),
      Snapshot(4, {partial, b_shrunk, n, p, q}),
      Snapshot(5, {partial, b_shrunk, n, p, q}),
  };
  s.expected = {
      {EventKind::kBirth, EventKind::kBirth, EventKind::kBirth, EventKind::kDeath,
       EventKind::kGrow, EventKind::kShrink},
      {EventKind::kGrow, EventKind::kGrow, EventKind::kGrow, EventKind::kMerge},
      {EventKind::kGrow, EventKind::kGrow, EventKind::kGrow, EventKind::kSplit},
      {EventKind::kGrow, EventKind::kGrow, EventKind::kGrow, EventKind::kGrow,
       EventKind::kPartial},
      {EventKind::kGrow, EventKind::kGrow, EventKind::kGrow, EventKind::kGrow,
       EventKind::kGrow},
  };
  for (auto& kinds : s.expected) std::sort(kinds.begin(), kinds.end());
  return s;
}

synthkit::SynthSpec ShiftCohortSpec(std::uint64_t seed) {
  synthkit::SynthSpec spec;
  spec.seed = seed;
  spec.start = 1593561600;  // 2020-07-01
  spec.days = 184;
  spec.base_rate = 300;
  spec.bursts = {{10 * kSecondsPerDay, 7200, 6.0, {"quake", "aftershock"}},
                 {60 * kSecondsPerDay, 7200, 8.0, {"vaccine", "approval"}}};
  spec.blocks.resize(3);
  for (auto& b : spec.blocks) b.size = 30;
  spec.blocks[0].label = "pro-vaccine";
  spec.blocks[0].opinion_mix = {0.6, 0.3, 0.1};
  spec.blocks[1].label = "anti-vaccine";
  spec.blocks[1].opinion_mix = {0.1, 0.3, 0.6};
  // Index 0 is Anger, 6 is Neutral; the second emotion tags the cohort.
  const struct {
    opinion::ShiftDirection direction;
    std::size_t tag;
    double anger_after;
  } kCohorts[] = {{opinion::ShiftDirection::kToAnti, 1, 0.3},
                  {opinion::ShiftDirection::kToAnti, 2, 0.3},
                  {opinion::ShiftDirection::kToPro, 3, 0.1},
                  {opinion::ShiftDirection::kToPro, 4, 0.1}};
  for (const auto& k : kCohorts) {
    synthkit::CohortSpec c;
    c.size = 15;
    c.direction = k.direction;
    c.posts_per_window = 200;
    c.before_emotions = {};
    c.before_emotions[0] = 0.1;
    c.before_emotions[k.tag] = 0.8;
    c.before_emotions[6] = 0.1;
    c.after_emotions = {};
    c.after_emotions[0] = k.anger_after;
    c.after_emotions[k.tag] = 0.9 - k.anger_after;
    c.after_emotions[6] = 0.1;
    c.before_opinions = {0, 1, 0};
    c.after_opinions = k.direction == opinion::ShiftDirection::kToPro
                           ? synthkit::OpinionMix{1, 0, 0}
                           : synthkit::OpinionMix{0, 0, 1};
    spec.cohorts.push_back(c);
  }
  return spec;
}

pipeline::PipelineConfig WriteFixtureCorpus(const synthkit::SynthSpec& spec,
                                            const std::filesystem::path& dir) {
  synthkit::WriteSynthOutput(synthkit::Generate(spec), dir);
  pipeline::PipelineConfig config;
  config.posts = dir / "posts.jsonl";
  config.reposts = dir / "reposts.jsonl";
  config.out = dir / "out";
  config.seed = spec.seed;
  return config;
}

}  // namespace discourse::testing
