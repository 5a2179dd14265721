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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every expectation comes from an oracle written here or in the
// shared test fixtures, never from the code under test.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boost/math/special_functions/beta.hpp"
#include "discourse/community.h"
#include "discourse/emotion.h"
#include "discourse/graph.h"
#include "discourse/io.h"
#include "discourse/kmeans.h"
#include "discourse/louvain.h"
#include "discourse/opinion.h"
#include "discourse/oracles.h"
#include "discourse/pipeline.h"
#include "discourse/stats.h"
#include "discourse/synthkit.h"
#include "discourse/trendseg.h"
#include "json.hpp"
#include "testing/fixtures.h"

namespace discourse {
namespace {

namespace fs = std::filesystem;
using testing::ScratchDir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome Pass(std::string detail) { return {true, std::move(detail)}; }
Outcome Fail(std::string detail) { return {false, std::move(detail)}; }

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// 1. Opinion score against post-by-post enumeration.
Outcome OpinionOracle() {
  int cases = 0;
  int mismatches = 0;
  for (int np = 0; np <= 5; ++np) {
    for (int nn = 0; nn <= 5; ++nn) {
      for (int na = 0; na <= 5; ++na) {
        if (np + nn + na == 0) continue;
        ++cases;
        if (opinion::OpinionScore(np, nn, na) != testing::ReferenceOpinionScore(np, nn, na)) {
          ++mismatches;
        }
      }
    }
  }
  const std::string detail = std::to_string(cases) + " cases, " +
                             std::to_string(mismatches) + " mismatches";
  return cases == 215 && mismatches == 0 ? Pass(detail) : Fail(detail);
}

// 2. Leaning thresholds at the +/-0.3 band.
Outcome LeaningThresholds() {
  const std::pair<double, Opinion> cases[] = {
      {0.31, Opinion::kPro},      {-0.31, Opinion::kAnti}, {0.3, Opinion::kNeutral},
      {-0.3, Opinion::kNeutral},  {0.0, Opinion::kNeutral}};
  int wrong = 0;
  for (const auto& [score, expected] : cases) {
    if (opinion::ClassifyLeaning(score) != expected) ++wrong;
  }
  return wrong == 0 ? Pass("5 boundary scores") : Fail(std::to_string(wrong) + " misclassified");
}

// 3. Seasonal profile recovery on a noise-free planted series.
Outcome SeasonalityIdentity() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> factor(0.2, 3.0);
  synthkit::SynthSpec spec;
  spec.days = 30;
  spec.base_rate = 14400;
  spec.season_profile.resize(144);
  for (double& f : spec.season_profile) f = factor(rng);
  const double mean =
      std::accumulate(spec.season_profile.begin(), spec.season_profile.end(), 0.0) / 144.0;

  const trendseg::CountSeries series = synthkit::ExpectedCountSeries(spec);
  const trendseg::SeasonProfile profile = trendseg::ComputeSeasonProfile(series);
  double factor_error = 0.0;
  for (std::size_t s = 0; s < 144; ++s) {
    factor_error =
        std::max(factor_error, std::fabs(profile.factors[s] - spec.season_profile[s] / mean));
  }
  const trendseg::CountSeries flat = trendseg::Deseasonalize(series, profile);
  const auto [lo, hi] = std::minmax_element(flat.values.begin(), flat.values.end());
  const double spread = *hi - *lo;
  const std::string detail =
      Fmt("max factor error %.3g, deseasonalized spread %.3g", factor_error, spread);
  return factor_error <= 1e-9 && spread <= 1e-9 ? Pass(detail) : Fail(detail);
}

// 4. Planted bursts recovered as the top peaks.
Outcome PeakRecovery() {
  int recovered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    synthkit::SynthSpec spec;
    spec.seed = seed;
    spec.days = 30;
    spec.base_rate = 7200;  // 50 posts per bin
    const double magnitudes[] = {5, 6, 7, 8, 9};
    for (int b = 0; b < 5; ++b) {
      const Timestamp apex = (3 + 6 * b) * kSecondsPerDay + (2 + 4 * b) * 3600 + 1800;
      spec.bursts.push_back({apex, 7200, magnitudes[b], {}});
    }
    const trendseg::CountSeries counts = synthkit::SampleCountSeries(spec);
    const trendseg::CountSeries flat =
        trendseg::Deseasonalize(counts, trendseg::ComputeSeasonProfile(counts));
    trendseg::SegmenterConfig config;
    config.epsilon = 0.2;
    config.tau = 144;
    const auto segments = trendseg::SegmentTrends(flat.values, config);
    const auto peaks = trendseg::ExtractPeaks(flat, segments, 5);
    std::set<std::size_t> planted;
    for (const auto& b : spec.bursts) {
      planted.insert(static_cast<std::size_t>((spec.start + b.apex - counts.start) / 600));
    }
    int hits = 0;
    for (const auto& p : peaks) {
      for (std::size_t apex : planted) {
        if (p.bin_index + 1 >= apex && p.bin_index <= apex + 1) {
          ++hits;
          planted.erase(apex);
          break;
        }
      }
    }
    if (hits == 5) ++recovered;
  }
  const std::string detail = std::to_string(recovered) + "/10 seeds recover all 5 apexes";
  return recovered >= 9 ? Pass(detail) : Fail(detail);
}

// 5. Louvain against exhaustive search on small graphs.
Outcome LouvainOptimality() {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> size(3, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int optimal = 0;
  double worst_ratio = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size(rng);
    const double density = 0.25 + 0.5 * unit(rng);
    std::vector<std::pair<community::NodeId, community::NodeId>> edges;
    while (edges.empty()) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (unit(rng) < density) edges.push_back({community::NodeId(i), community::NodeId(j)});
        }
      }
    }
    const community::WeightedGraph g = testing::GraphFromEdges(n, edges);
    const double q = testing::ReferenceModularity(g, community::Louvain(g, 1000 + trial));
    const double best = synthkit::BruteForceModularity(g).modularity;
    if (q >= best - 1e-12) ++optimal;
    if (best > 1e-12) worst_ratio = std::min(worst_ratio, q / best);
  }
  const std::string detail = Fmt("optimal in %.0f/50, worst ratio %.4f", optimal, worst_ratio);
  return optimal >= 45 && worst_ratio >= 0.95 - 1e-12 ? Pass(detail) : Fail(detail);
}

// 6. Ensemble recovers planted blocks, deterministically.
Outcome EnsembleRecovery() {
  const synthkit::PlantedGraph planted = synthkit::PlantedPartitionGraph(4, 50, 0.3, 0.01, 6);
  community::RepostGraph rg;
  for (std::size_t i = 0; i < planted.graph.NumNodes(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%04zu", i);
    rg.nodes.push_back(buf);
  }
  rg.graph = planted.graph;
  community::EnsembleConfig config;
  config.runs = 100;
  config.agree = 90;
  config.base_seed = 17;
  const community::CommunitySnapshot a = community::EnsembleLouvain(rg, config);
  config.threads = 1;
  const community::CommunitySnapshot b = community::EnsembleLouvain(rg, config);
  const community::Partition labels = community::SnapshotPartition(a, rg.nodes);
  const double nmi = community::NormalizedMutualInformation(labels, planted.blocks);
  const bool same = a.communities == b.communities && a.unassigned == b.unassigned;
  const std::string detail = Fmt("NMI %.4f, %.0f communities", nmi, a.communities.size()) +
                             (same ? ", repeat identical" : ", repeat differs");
  return nmi >= 0.9 && same ? Pass(detail) : Fail(detail);
}

// 7. Scripted evolution scenario.
Outcome EvolutionTyping() {
  const testing::EvolutionScenario scenario = testing::MakeEvolutionScenario();
  std::set<community::EventKind> seen;
  int wrong = 0;
  for (std::size_t t = 0; t + 1 < scenario.snapshots.size(); ++t) {
    std::vector<community::EventKind> kinds;
    for (const auto& e : community::MatchCommunities(scenario.snapshots[t], scenario.snapshots[t + 1])) {
      kinds.push_back(e.kind);
      seen.insert(e.kind);
    }
    std::sort(kinds.begin(), kinds.end());
    if (kinds != scenario.expected[t]) ++wrong;
  }
  const std::string detail = std::to_string(scenario.snapshots.size() - 1 - wrong) + "/" +
                             std::to_string(scenario.snapshots.size() - 1) +
                             " transitions, " + std::to_string(seen.size()) + " event kinds";
  return wrong == 0 && seen.size() == 7 ? Pass(detail) : Fail(detail);
}

// 8. Shift eligibility and cohort sampling.
Outcome CohortRules() {
  // Every profile with 3..7 posts, paired with every other.
  std::vector<opinion::OpinionProfile> grid;
  for (int t = 3; t <= 7; ++t) {
    for (int p = 0; p <= t; ++p) {
      for (int a = 0; p + a <= t; ++a) {
        opinion::OpinionProfile prof;
        prof.pro = p;
        prof.anti = a;
        prof.neutral = t - p - a;
        prof.score = opinion::OpinionScore(p, t - p - a, a);
        grid.push_back(prof);
      }
    }
  }
  // Exact rational oracle: |(p2-a2)/t2 - (p1-a1)/t1| >= 1/2 and 5-post floor;
  // leaning pro iff (p-a)/t > 3/10.
  auto leaning = [](const opinion::OpinionProfile& x) {
    const int diff = x.pro - x.anti, t = x.Total();
    return 10 * diff > 3 * t ? 1 : 10 * diff < -3 * t ? -1 : 0;
  };
  int checked = 0, wrong = 0, straddling = 0;
  for (const auto& from : grid) {
    for (const auto& to : grid) {
      opinion::OpinionProfile f = from, g = to;
      f.user_id = g.user_id = "u";
      f.window = 0;
      g.window = 1;
      const auto shifts = opinion::DetectShifts(std::vector<opinion::OpinionProfile>{f, g});
      if (shifts.size() != 1) {
        ++wrong;
        continue;
      }
      const long t1 = f.Total(), t2 = g.Total();
      const long cross = std::labs((g.pro - g.anti) * t1 - (f.pro - f.anti) * t2);
      const bool eligible = 2 * cross >= t1 * t2 && t1 >= 5 && t2 >= 5;
      if (2 * cross == t1 * t2) ++straddling;
      opinion::ShiftDirection dir = opinion::ShiftDirection::kNone;
      if (leaning(g) == 1 && leaning(f) != 1) dir = opinion::ShiftDirection::kToPro;
      if (leaning(g) == -1 && leaning(f) != -1) dir = opinion::ShiftDirection::kToAnti;
      if (shifts[0].eligible != eligible || shifts[0].direction != dir) ++wrong;
      ++checked;
    }
  }
  // Sampling: min(cap, n) distinct users per stratum.
  int sampling_wrong = 0;
  for (int n : {0, 1, 40, 99, 100, 101, 250}) {
    std::vector<opinion::OpinionShift> shifts;
    for (int i = 0; i < n; ++i) {
      opinion::OpinionShift s;
      s.user_id = "s" + std::to_string(i);
      s.from_window = 0;
      s.to_window = 1;
      s.direction = opinion::ShiftDirection::kToAnti;
      s.eligible = true;
      shifts.push_back(s);
    }
    const auto sample = opinion::SampleShifters(shifts, 100, 8);
    std::set<std::string> users;
    for (const auto& s : sample) users.insert(s.user_id);
    if (sample.size() != static_cast<std::size_t>(std::min(100, n)) ||
        users.size() != sample.size()) {
      ++sampling_wrong;
    }
  }
  const std::string detail = std::to_string(checked) + " profile pairs (" +
                             std::to_string(straddling) + " at exactly 0.5), " +
                             std::to_string(wrong) + " wrong; sampling " +
                             std::to_string(sampling_wrong) + " wrong";
  return wrong == 0 && sampling_wrong == 0 ? Pass(detail) : Fail(detail);
}

// 9. Emotion vectors: both halves are distributions in emotion order.
Outcome VectorNormalization() {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> posts(1, 12);
  std::uniform_int_distribution<int> label(0, kNumEmotions - 1);
  const Timestamp origin = 1593561600;
  int bad_sum = 0, bad_order = 0;
  for (int fixture = 0; fixture < 1000; ++fixture) {
    corpus::Corpus c;
    std::array<int, 2 * kNumEmotions> counts{};
    int totals[2] = {0, 0};
    for (int half = 0; half < 2; ++half) {
      const int n = posts(rng);
      totals[half] = n;
      for (int i = 0; i < n; ++i) {
        const int e = label(rng);
        ++counts[half * kNumEmotions + e];
        c.posts.push_back(testing::Post(std::to_string(c.posts.size()), "u",
                                        origin + half * 40 * kSecondsPerDay + i * 60, {},
                                        Opinion::kNeutral, kAllEmotions[e]));
      }
    }
    const corpus::WindowPartition partition = corpus::PartitionWindows(c, origin, 1);
    opinion::OpinionShift s;
    s.user_id = "u";
    s.from_window = 0;
    s.to_window = 1;
    const auto vectors =
        emotion::BuildEmotionVectors(std::vector<opinion::OpinionShift>{s}, c.posts, partition);
    const auto& v = vectors.at(0).values;
    for (int half = 0; half < 2; ++half) {
      double sum = 0.0;
      for (std::size_t e = 0; e < kNumEmotions; ++e) {
        const double x = v[half * kNumEmotions + e];
        sum += x;
        if (std::fabs(x - static_cast<double>(counts[half * kNumEmotions + e]) / totals[half]) >
            1e-12) {
          ++bad_order;
        }
      }
      if (std::fabs(sum - 1.0) > 1e-9) ++bad_sum;
    }
  }
  const std::string detail = "1000 fixtures, " + std::to_string(bad_sum) +
                             " bad sums, " + std::to_string(bad_order) + " misplaced entries";
  return bad_sum == 0 && bad_order == 0 ? Pass(detail) : Fail(detail);
}

// 10. Elbow on three planted 14-dimensional clusters.
Outcome KMeansElbow() {
  int chose_three = 0, matched = 0, non_monotone = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed * 101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<emotion::Point> centers;
    while (centers.size() < 3) {
      emotion::Point c(14);
      for (double& x : c) x = unit(rng);
      bool far = true;
      for (const auto& o : centers) {
        double d2 = 0.0;
        for (int j = 0; j < 14; ++j) d2 += (c[j] - o[j]) * (c[j] - o[j]);
        far = far && std::sqrt(d2) >= 0.5;
      }
      if (far) centers.push_back(c);
    }
    std::vector<emotion::Point> points;
    std::vector<int> truth;
    for (int i = 0; i < 60; ++i) {
      emotion::Point p = centers[i % 3];
      for (double& x : p) x += noise(rng);
      points.push_back(p);
      truth.push_back(i % 3);
    }
    const auto fits = emotion::FitRange(points, 1, 15, seed);
    std::map<int, double> curve;
    for (const auto& [k, fit] : fits) {
      curve[k] = fit.inertia;
      for (std::size_t i = 1; i < fit.inertia_history.size(); ++i) {
        if (fit.inertia_history[i] > fit.inertia_history[i - 1] + 1e-12) ++non_monotone;
      }
    }
    const emotion::ElbowChoice choice = emotion::SelectKElbow(curve, 2);
    if (choice.k != 3) continue;
    ++chose_three;
    if (testing::SamePartition(fits.at(3).assignments, truth)) ++matched;
  }
  const std::string detail = Fmt("k=3 for %.0f/10 seeds, labels match in %.0f, %.0f non-monotone histories",
                                 chose_three, matched, non_monotone);
  return chose_three >= 8 && matched == chose_three && non_monotone == 0 ? Pass(detail)
                                                                         : Fail(detail);
}

// 11. t-test against the textbook formula and Boost's incomplete beta.
Outcome TTestOracle() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(2, 25);
  std::normal_distribution<double> value(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  double dt = 0.0, dd = 0.0, dp = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(size(rng)), b(size(rng));
    const double offset = shift(rng);
    for (double& x : a) x = value(rng) + offset;
    for (double& x : b) x = value(rng);
    const double n1 = a.size(), n2 = b.size();
    const double m1 = std::accumulate(a.begin(), a.end(), 0.0) / n1;
    const double m2 = std::accumulate(b.begin(), b.end(), 0.0) / n2;
    double ss = 0.0;
    for (double x : a) ss += (x - m1) * (x - m1);
    for (double x : b) ss += (x - m2) * (x - m2);
    const double df = n1 + n2 - 2.0;
    const double sp = std::sqrt(ss / df);
    const double t = (m1 - m2) / (sp * std::sqrt(1.0 / n1 + 1.0 / n2));
    const double p = boost::math::ibeta(df / 2.0, 0.5, df / (df + t * t));
    const double d = (m1 - m2) / sp;
    const stats::TTestResult r = stats::TwoSampleTTest(a, b);
    dt = std::max(dt, std::fabs(r.t - t));
    dd = std::max(dd, std::fabs(r.d - d));
    dp = std::max(dp, std::fabs(r.p - p));
  }
  std::vector<double> g12, g7;
  for (int i = 0; i < 12; ++i) g12.push_back(std::sin(i + 1.0));
  for (int i = 0; i < 7; ++i) g7.push_back(std::cos(i + 1.0));
  const int df = stats::TwoSampleTTest(g12, g7).df;
  const std::string detail =
      Fmt("max |dt| %.2g, |dd| %.2g, |dp| %.2g", dt, dd, dp) + ", (12,7) df " + std::to_string(df);
  return dt <= 1e-9 && dd <= 1e-9 && dp <= 1e-9 && df == 17 ? Pass(detail) : Fail(detail);
}

std::map<std::string, std::map<std::string, std::string>> ReadRows(const fs::path& csv,
                                                                    const std::string& key) {
  const io::CsvTable table = io::ReadCsv(csv);
  std::map<std::string, std::map<std::string, std::string>> rows;
  for (const auto& row : table.rows) {
    auto& out = rows[row[table.Column(key)]];
    for (std::size_t c = 0; c < table.header.size(); ++c) out[table.header[c]] = row[c];
  }
  return rows;
}

// 12. Full pipeline recovers the planted Anger rise of the to-anti cohort.
Outcome EndToEndSignature() {
  ScratchDir dir;
  const pipeline::PipelineConfig config =
      testing::WriteFixtureCorpus(testing::ShiftCohortSpec(12), dir.path());
  pipeline::RunPipeline(config);
  const auto rows = ReadRows(config.out / "ttest.csv", "emotion");
  const auto it = rows.find("Anger");
  if (it == rows.end()) return Fail("no Anger row in ttest.csv");
  const double t = std::stod(it->second.at("t"));
  const double p = std::stod(it->second.at("p"));
  const std::string detail =
      "Anger t(" + it->second.at("df") + ")=" + Fmt("%.3f, p=%.3g", t, p);
  return t > 0.0 && p < 0.01 ? Pass(detail) : Fail(detail);
}

int RunCli(const std::string& args) {
  const std::string command = std::string(DISCOURSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json ManifestArtifacts(const fs::path& out) {
  std::ifstream in(out / "manifest.json");
  return nlohmann::json::parse(in).at("artifacts");
}

// 13. Two reruns from one manifest produce identical artifacts.
Outcome Determinism() {
  ScratchDir dir;
  synthkit::WriteSynthOutput(synthkit::Generate(testing::ShiftCohortSpec(13)), dir.path());
  const std::string base = dir.path().string();
  if (RunCli("run --posts " + base + "/posts.jsonl --reposts " + base +
             "/reposts.jsonl --out " + base + "/first --seed 13") != 0) {
    return Fail("initial run failed");
  }
  const std::string manifest = base + "/first/manifest.json";
  if (RunCli("run --config " + manifest + " --out " + base + "/second") != 0 ||
      RunCli("run --config " + manifest + " --out " + base + "/third --threads 1") != 0) {
    return Fail("rerun from manifest failed");
  }
  const nlohmann::json a = ManifestArtifacts(dir / "first");
  const nlohmann::json b = ManifestArtifacts(dir / "second");
  const nlohmann::json c = ManifestArtifacts(dir / "third");
  const std::string detail = std::to_string(a.size()) + " artifacts compared across 3 runs";
  return !a.empty() && a == b && b == c ? Pass(detail) : Fail(detail);
}

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace discourse

int main() {
  using discourse::Criterion;
  const Criterion criteria[] = {
      {1, "opinion score oracle", 1, discourse::OpinionOracle},
      {2, "leaning thresholds", 1, discourse::LeaningThresholds},
      {3, "seasonality identity", 5, discourse::SeasonalityIdentity},
      {4, "peak recovery", 30, discourse::PeakRecovery},
      {5, "louvain optimality", 60, discourse::LouvainOptimality},
      {6, "ensemble recovery", 120, discourse::EnsembleRecovery},
      {7, "evolution typing", 1, discourse::EvolutionTyping},
      {8, "cohort rules", 1, discourse::CohortRules},
      {9, "emotion vector normalization", 1, discourse::VectorNormalization},
      {10, "k-means elbow", 60, discourse::KMeansElbow},
      {11, "t-test oracle", 5, discourse::TTestOracle},
      {12, "end-to-end signature", 120, discourse::EndToEndSignature},
      {13, "determinism", 300, discourse::Determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto begin = std::chrono::steady_clock::now();
    discourse::Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = discourse::Fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %d: %s: %s [%.2f s of %.0f s]%s\n", pass ? "PASS" : "FAIL", c.number,
                c.name, outcome.detail.c_str(), seconds, c.budget_seconds,
                in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
