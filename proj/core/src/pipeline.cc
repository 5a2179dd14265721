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

#include "discourse/pipeline.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "discourse/community.h"
#include "discourse/corpus.h"
#include "discourse/emotion.h"
#include "discourse/eventkeys.h"
#include "discourse/io.h"
#include "discourse/kmeans.h"
#include "discourse/opinion.h"
#include "discourse/stats.h"
#include "discourse/trendseg.h"
#include "json.hpp"

namespace discourse::pipeline {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr char kCleanPosts[] = "corpus_posts.jsonl";
constexpr char kCleanReposts[] = "corpus_reposts.jsonl";
constexpr char kManifest[] = "manifest.json";

// Collects the files a stage writes.
class ArtifactSink {
 public:
  explicit ArtifactSink(fs::path dir) : dir_(std::move(dir)) {}

  std::ofstream Open(const std::string& name) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir_ / name).string());
    names_.push_back(name);
    return out;
  }

  void WriteJson(const std::string& name, const json& value) {
    std::ofstream out = Open(name);
    out << value.dump(2) << '\n';
  }

  void Record(const std::string& name) { names_.push_back(name); }
  const fs::path& dir() const { return dir_; }
  std::vector<std::string> names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

fs::path RequireArtifact(const PipelineConfig& config, const std::string& name,
                         Stage producer) {
  const fs::path path = config.out / name;
  if (!fs::exists(path)) {
    throw std::runtime_error("missing artifact " + name + "; run stage " +
                             std::string(ToString(producer)) + " first");
  }
  return path;
}

corpus::Corpus IngestInputs(const PipelineConfig& config,
                            corpus::LoadReport* posts_report,
                            corpus::LoadReport* reposts_report,
                            std::size_t* filtered_out) {
  corpus::LoadOptions options;
  options.max_reject_fraction = config.max_reject_fraction;
  std::optional<fs::path> reposts;
  if (!config.reposts.empty()) reposts = config.reposts;
  corpus::Corpus raw = corpus::LoadCorpus(config.posts, reposts, options,
                                          posts_report, reposts_report);
  if (config.include_tokens.empty() && config.exclude_tokens.empty()) {
    if (filtered_out) *filtered_out = 0;
    return raw;
  }
  const std::unordered_set<std::string> include(config.include_tokens.begin(),
                                                config.include_tokens.end());
  const std::unordered_set<std::string> exclude(config.exclude_tokens.begin(),
                                                config.exclude_tokens.end());
  corpus::Corpus kept = corpus::FilterRecords(raw, include, exclude);
  if (filtered_out) *filtered_out = raw.posts.size() - kept.posts.size();
  return kept;
}

// The ingested corpus: the corpus stage's artifacts when present, otherwise
// the raw inputs read through the same path.
corpus::Corpus StageCorpus(const PipelineConfig& config) {
  const fs::path posts = config.out / kCleanPosts;
  const fs::path reposts = config.out / kCleanReposts;
  if (fs::exists(posts) && fs::exists(reposts)) {
    corpus::LoadOptions strict;
    strict.max_reject_fraction = 0.0;
    return corpus::LoadCorpus(posts, reposts, strict);
  }
  return IngestInputs(config, nullptr, nullptr, nullptr);
}

corpus::WindowPartition Windows(const PipelineConfig& config,
                                const corpus::Corpus& corpus) {
  const Timestamp origin =
      config.origin ? *config.origin : corpus::DefaultOrigin(corpus);
  try {
    return corpus::PartitionWindows(corpus, origin, config.window_months);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string Str(std::size_t v) { return std::to_string(v); }
std::string Str(int v) { return std::to_string(v); }
std::string Str(long v) { return std::to_string(v); }
std::string Str(long long v) { return std::to_string(v); }
std::string Str(double v) { return io::FormatDouble(v); }

std::size_t ToSize(const std::string& text) {
  return static_cast<std::size_t>(std::stoull(text));
}

// ---------------------------------------------------------------- corpus

void CorpusStage(const PipelineConfig& config, ArtifactSink& sink) {
  corpus::LoadReport posts_report;
  corpus::LoadReport reposts_report;
  std::size_t filtered_out = 0;
  const corpus::Corpus corpus =
      IngestInputs(config, &posts_report, &reposts_report, &filtered_out);
  if (corpus.posts.empty()) throw DataError("no posts survived ingest");
  const corpus::WindowPartition partition = Windows(config, corpus);

  corpus::WritePosts(corpus.posts, sink.dir() / kCleanPosts);
  sink.Record(kCleanPosts);
  corpus::WriteReposts(corpus.reposts, sink.dir() / kCleanReposts);
  sink.Record(kCleanReposts);

  json windows = json::array();
  for (const corpus::AnalysisWindow& w : partition.windows) {
    windows.push_back({{"index", w.index},
                       {"start", w.start},
                       {"end", w.end},
                       {"start_utc", io::FormatUtc(w.start)},
                       {"end_utc", io::FormatUtc(w.end)},
                       {"posts", partition.posts[w.index].size()},
                       {"reposts", partition.reposts[w.index].size()}});
  }
  sink.WriteJson("windows.json", {{"origin", partition.origin},
                                  {"months", partition.months},
                                  {"windows", windows}});

  auto report_json = [](const corpus::LoadReport& r) {
    return json{{"accepted", r.accepted},
                {"rejected", r.rejected},
                {"self_reposts", r.self_reposts},
                {"errors", r.errors}};
  };
  sink.WriteJson("ingest_report.json",
                 {{"posts", report_json(posts_report)},
                  {"reposts", report_json(reposts_report)},
                  {"filtered_out_posts", filtered_out},
                  {"kept_posts", corpus.posts.size()},
                  {"kept_reposts", corpus.reposts.size()}});
}

// -------------------------------------------------------------- trendseg

std::string_view DirectionName(trendseg::Direction d) {
  return d == trendseg::Direction::kUp ? "up" : "down";
}

void TrendsegStage(const PipelineConfig& config, ArtifactSink& sink) {
  const corpus::Corpus corpus = StageCorpus(config);
  if (corpus.posts.empty()) throw DataError("no posts to bin");
  const trendseg::CountSeries counts =
      trendseg::BinCounts(corpus.posts, config.bin_seconds);
  if (counts.values.size() < 2) {
    throw DataError("activity series needs at least two bins");
  }
  trendseg::SeasonProfile profile;
  const std::size_t slots =
      static_cast<std::size_t>(kSecondsPerDay / config.bin_seconds);
  if (counts.values.size() >= slots) {
    profile = trendseg::ComputeSeasonProfile(counts);
  } else {
    // Less than a day of data: no seasonality can be estimated.
    profile.slot_width = config.bin_seconds;
    profile.slots_per_day = slots;
    profile.factors.assign(slots, 1.0);
  }
  const trendseg::CountSeries flat = trendseg::Deseasonalize(counts, profile);
  trendseg::SegmenterConfig seg_config;
  seg_config.epsilon = config.epsilon;
  seg_config.tau = config.tau;
  const std::vector<trendseg::TrendSegment> segments =
      trendseg::SegmentTrends(flat.values, seg_config);
  const std::vector<trendseg::Peak> peaks =
      trendseg::ExtractPeaks(flat, segments, config.top_peaks);

  {
    std::ofstream out = sink.Open("series.csv");
    io::CsvWriter csv(out);
    csv.Row({"bin_index", "timestamp", "count", "deseasonalized"});
    for (std::size_t i = 0; i < counts.values.size(); ++i) {
      csv.Row({Str(i), Str(counts.BinStart(i)), Str(counts.values[i]),
               Str(flat.values[i])});
    }
  }
  {
    std::ofstream out = sink.Open("season_profile.csv");
    io::CsvWriter csv(out);
    csv.Row({"slot", "offset_seconds", "factor"});
    for (std::size_t s = 0; s < profile.factors.size(); ++s) {
      csv.Row({Str(s), Str(static_cast<long long>(s) * profile.slot_width),
               Str(profile.factors[s])});
    }
  }
  {
    std::ofstream out = sink.Open("segments.csv");
    io::CsvWriter csv(out);
    csv.Row({"index", "direction", "start_index", "end_index",
             "extremum_index", "start_ts", "end_ts", "amplitude"});
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const trendseg::TrendSegment& s = segments[i];
      csv.Row({Str(i), std::string(DirectionName(s.direction)),
               Str(s.start_index), Str(s.end_index), Str(s.extremum_index),
               Str(flat.BinStart(s.start_index)),
               Str(flat.BinStart(s.end_index)), Str(s.amplitude)});
    }
  }
  {
    std::ofstream out = sink.Open("peaks.csv");
    io::CsvWriter csv(out);
    csv.Row({"rank", "timestamp", "height", "bin_index"});
    for (const trendseg::Peak& p : peaks) {
      csv.Row({Str(p.rank), Str(p.timestamp), Str(p.height), Str(p.bin_index)});
    }
  }
}

// ------------------------------------------------------------- eventkeys

std::unordered_set<std::string> ReadStopwords(const fs::path& path) {
  std::unordered_set<std::string> words;
  if (path.empty()) return words;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stopwords file " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty() && line[0] != '#') words.insert(line);
  }
  return words;
}

void EventkeysStage(const PipelineConfig& config, ArtifactSink& sink) {
  const io::CsvTable series_csv = io::ReadCsv(
      RequireArtifact(config, "series.csv", Stage::kTrendseg));
  const io::CsvTable segments_csv = io::ReadCsv(
      RequireArtifact(config, "segments.csv", Stage::kTrendseg));
  const io::CsvTable peaks_csv =
      io::ReadCsv(RequireArtifact(config, "peaks.csv", Stage::kTrendseg));

  trendseg::CountSeries series;
  series.bin_width = config.bin_seconds;
  const std::size_t ts_col = series_csv.Column("timestamp");
  const std::size_t value_col = series_csv.Column("deseasonalized");
  if (series_csv.rows.empty()) throw DataError("series.csv is empty");
  series.start = std::stoll(series_csv.rows.front()[ts_col]);
  if (series_csv.rows.size() >= 2) {
    series.bin_width = std::stoll(series_csv.rows[1][ts_col]) - series.start;
  }
  for (const auto& row : series_csv.rows) {
    series.values.push_back(std::stod(row[value_col]));
  }

  std::vector<trendseg::TrendSegment> segments;
  for (const auto& row : segments_csv.rows) {
    trendseg::TrendSegment s;
    s.direction = row[segments_csv.Column("direction")] == "up"
                      ? trendseg::Direction::kUp
                      : trendseg::Direction::kDown;
    s.start_index = ToSize(row[segments_csv.Column("start_index")]);
    s.end_index = ToSize(row[segments_csv.Column("end_index")]);
    s.extremum_index = ToSize(row[segments_csv.Column("extremum_index")]);
    s.amplitude = std::stod(row[segments_csv.Column("amplitude")]);
    segments.push_back(s);
  }

  const corpus::Corpus corpus = StageCorpus(config);
  eventkeys::KeywordOptions options;
  options.min_count = config.min_count;
  options.top_k = config.top_k;
  options.stopwords = ReadStopwords(config.stopwords);

  json sections = json::array();
  for (const auto& row : peaks_csv.rows) {
    trendseg::Peak peak;
    peak.rank = std::stoi(row[peaks_csv.Column("rank")]);
    peak.timestamp = std::stoll(row[peaks_csv.Column("timestamp")]);
    peak.height = std::stod(row[peaks_csv.Column("height")]);
    peak.bin_index = ToSize(row[peaks_csv.Column("bin_index")]);
    const trendseg::TimeRange section =
        trendseg::EventSection(series, segments, peak);
    const std::vector<eventkeys::KeywordScore> scores =
        eventkeys::KeywordScores(corpus.posts, section, options);
    sections.push_back({{"rank", peak.rank},
                        {"peak", peak.timestamp},
                        {"start", section.start},
                        {"end", section.end},
                        {"keywords", scores.size()}});
    std::ofstream out = sink.Open("keywords_" + Str(peak.rank) + ".csv");
    io::CsvWriter csv(out);
    csv.Row({"token", "score", "event_count", "global_count", "event_freq",
             "global_freq"});
    for (const eventkeys::KeywordScore& s : scores) {
      csv.Row({s.token, Str(s.score), Str(s.event_count), Str(s.global_count),
               Str(s.event_freq), Str(s.global_freq)});
    }
  }
  sink.WriteJson("event_sections.json", sections);
}

// ------------------------------------------------------------- community

community::SeedLists ReadSeeds(const fs::path& path) {
  community::SeedLists seeds;
  if (path.empty()) return seeds;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read seeds file " + path.string());
  json j;
  try {
    j = json::parse(in);
    if (!j.is_object()) throw ConfigError("seeds file must hold a JSON object");
    for (const auto& [key, ids] : j.items()) {
      const std::optional<community::CommunityLabel> label =
          community::ParseCommunityLabel(key);
      if (!label) throw ConfigError("unknown community label in seeds: " + key);
      seeds[*label] = ids.get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError("invalid seeds file: " + std::string(e.what()));
  }
  return seeds;
}

void CommunityStage(const PipelineConfig& config, ArtifactSink& sink) {
  const corpus::Corpus corpus = StageCorpus(config);
  const corpus::WindowPartition partition = Windows(config, corpus);
  community::EnsembleConfig ensemble;
  ensemble.runs = config.ensemble_runs;
  ensemble.agree = config.ensemble_agree;
  ensemble.base_seed = config.seed;
  ensemble.threads = config.threads;

  std::vector<community::CommunitySnapshot> snapshots;
  for (const corpus::AnalysisWindow& w : partition.windows) {
    const community::RepostGraph graph =
        community::BuildRepostGraph(corpus.reposts, w);
    community::CommunitySnapshot snapshot;
    if (graph.graph.TotalWeight() > 0.0) {
      snapshot = community::EnsembleLouvain(graph, ensemble);
    }
    snapshot.window = w.index;
    json communities = json::array();
    for (std::size_t c = 0; c < snapshot.communities.size(); ++c) {
      communities.push_back({{"id", c},
                             {"size", snapshot.communities[c].size()},
                             {"members", snapshot.communities[c]}});
    }
    sink.WriteJson("communities_" + Str(w.index) + ".json",
                   {{"window", w.index},
                    {"start", w.start},
                    {"end", w.end},
                    {"nodes", graph.nodes.size()},
                    {"edges", graph.graph.NumEdges()},
                    {"communities", communities},
                    {"unassigned", snapshot.unassigned}});
    snapshots.push_back(std::move(snapshot));
  }

  json events = json::array();
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    for (const community::EvolutionEvent& e : community::MatchCommunities(
             snapshots[i - 1], snapshots[i], config.match_threshold)) {
      json overlaps = json::array();
      for (const community::Overlap& o : e.overlaps) {
        overlaps.push_back({{"prev", o.prev},
                            {"curr", o.curr},
                            {"shared", o.shared},
                            {"forward", o.forward},
                            {"backward", o.backward}});
      }
      events.push_back({{"kind", std::string(community::ToString(e.kind))},
                        {"from_window", e.from_window},
                        {"to_window", e.to_window},
                        {"predecessors", e.predecessors},
                        {"successors", e.successors},
                        {"overlaps", overlaps}});
    }
  }
  sink.WriteJson("evolution.json", events);

  {
    std::ofstream out = sink.Open("influencers.csv");
    io::CsvWriter csv(out);
    csv.Row({"rank", "user", "reposted"});
    const auto top = community::TopInfluencers(corpus.reposts, config.top_influencers);
    for (std::size_t i = 0; i < top.size(); ++i) {
      csv.Row({Str(i + 1), top[i].first, Str(top[i].second)});
    }
  }

  community::LabelingOptions labeling;
  labeling.min_seeds = config.min_seeds;
  const std::vector<community::CommunityTimeline> timelines =
      community::LabelTimelines(snapshots, ReadSeeds(config.seeds), labeling);
  json timeline_json = json::array();
  for (const community::CommunityTimeline& t : timelines) {
    json windows = json::array();
    for (std::size_t w = 0; w < t.communities.size(); ++w) {
      windows.push_back({{"window", w},
                         {"communities", t.communities[w]},
                         {"size", t.members[w].size()}});
    }
    timeline_json.push_back(
        {{"label", std::string(community::ToString(t.label))}, {"windows", windows}});
  }
  sink.WriteJson("timelines.json", timeline_json);

  std::ofstream out = sink.Open("affiliations.csv");
  io::CsvWriter csv(out);
  csv.Row({"window", "user", "label"});
  std::vector<std::tuple<std::size_t, std::string, std::string>> rows;
  for (const community::CommunityTimeline& t : timelines) {
    for (std::size_t w = 0; w < t.members.size(); ++w) {
      for (const std::string& user : t.members[w]) {
        rows.emplace_back(w, user, std::string(community::ToString(t.label)));
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [w, user, label] : rows) csv.Row({Str(w), user, label});
}

// --------------------------------------------------------------- opinion

void WriteShifts(std::ofstream& out, std::span<const opinion::OpinionShift> shifts) {
  io::CsvWriter csv(out);
  csv.Row({"user", "from_window", "to_window", "from_score", "to_score",
           "from_posts", "to_posts", "direction", "eligible"});
  for (const opinion::OpinionShift& s : shifts) {
    csv.Row({s.user_id, Str(s.from_window), Str(s.to_window), Str(s.from_score),
             Str(s.to_score), Str(s.from_posts), Str(s.to_posts),
             std::string(opinion::ToString(s.direction)), s.eligible ? "1" : "0"});
  }
}

void OpinionStage(const PipelineConfig& config, ArtifactSink& sink) {
  const corpus::Corpus corpus = StageCorpus(config);
  const corpus::WindowPartition partition = Windows(config, corpus);
  const std::vector<opinion::OpinionProfile> profiles =
      opinion::ComputeProfiles(corpus.posts, partition);
  {
    std::ofstream out = sink.Open("opinion_profiles.csv");
    io::CsvWriter csv(out);
    csv.Row({"user", "window", "NP", "NN", "NA", "O", "leaning"});
    for (const opinion::OpinionProfile& p : profiles) {
      csv.Row({p.user_id, Str(p.window), Str(p.pro), Str(p.neutral), Str(p.anti),
               Str(p.score), std::string(ToString(opinion::ClassifyLeaning(p.score)))});
    }
  }
  opinion::ShiftCriteria criteria;
  criteria.min_delta = config.shift_delta;
  criteria.min_posts = config.min_posts;
  const std::vector<opinion::OpinionShift> shifts =
      opinion::DetectShifts(profiles, criteria);
  {
    std::ofstream out = sink.Open("shifts.csv");
    WriteShifts(out, shifts);
  }
  const std::vector<opinion::OpinionShift> cohort =
      opinion::SampleShifters(shifts, config.cohort_cap, config.seed);
  std::ofstream out = sink.Open("cohort.csv");
  WriteShifts(out, cohort);
}

// --------------------------------------------------------------- emotion

std::vector<opinion::OpinionShift> ReadShifts(const fs::path& path) {
  const io::CsvTable table = io::ReadCsv(path);
  std::vector<opinion::OpinionShift> shifts;
  for (const auto& row : table.rows) {
    opinion::OpinionShift s;
    s.user_id = row[table.Column("user")];
    s.from_window = std::stoi(row[table.Column("from_window")]);
    s.to_window = std::stoi(row[table.Column("to_window")]);
    s.from_score = std::stod(row[table.Column("from_score")]);
    s.to_score = std::stod(row[table.Column("to_score")]);
    s.from_posts = std::stoi(row[table.Column("from_posts")]);
    s.to_posts = std::stoi(row[table.Column("to_posts")]);
    const std::string& dir = row[table.Column("direction")];
    s.direction = dir == "to_pro"    ? opinion::ShiftDirection::kToPro
                  : dir == "to_anti" ? opinion::ShiftDirection::kToAnti
                                     : opinion::ShiftDirection::kNone;
    s.eligible = row[table.Column("eligible")] == "1";
    shifts.push_back(std::move(s));
  }
  return shifts;
}

std::vector<std::string> EmotionColumns(std::string_view prefix) {
  std::vector<std::string> cols;
  for (Emotion e : kAllEmotions) cols.push_back(std::string(prefix) + std::string(ToString(e)));
  return cols;
}

void AppendFractions(std::vector<std::string>& row, const EmotionFractions& f) {
  for (double v : f) row.push_back(Str(v));
}

void WriteDirectionClusters(const PipelineConfig& config, ArtifactSink& sink,
                            opinion::ShiftDirection direction,
                            std::span<const emotion::EmotionVector> all) {
  const std::string name(opinion::ToString(direction));
  std::vector<emotion::EmotionVector> vectors;
  for (const emotion::EmotionVector& v : all) {
    if (v.direction == direction) vectors.push_back(v);
  }
  const std::vector<emotion::Point> points = emotion::ToPoints(vectors);

  json clusters = {{"direction", name}, {"points", points.size()}};
  std::optional<emotion::ClusteringResult> chosen;
  if (!points.empty()) {
    const int k_max = std::min<int>(config.kmax, static_cast<int>(points.size()));
    emotion::KMeansOptions options;
    options.restarts = config.restarts;
    const std::map<int, emotion::ClusteringResult> fits =
        emotion::FitRange(points, 1, k_max, config.seed, options);
    std::map<int, double> inertia;
    for (const auto& [k, fit] : fits) inertia[k] = fit.inertia;
    int k = k_max;
    bool fallback = true;
    std::map<int, double> drops;
    if (inertia.size() >= 3) {
      const emotion::ElbowChoice elbow = emotion::SelectKElbow(inertia, config.min_k);
      k = elbow.k;
      fallback = elbow.fallback;
      drops = elbow.relative_drop;
    }
    chosen = fits.at(k);
    json curve = json::array();
    for (const auto& [kk, value] : inertia) {
      json entry = {{"k", kk}, {"inertia", value}};
      if (drops.count(kk)) entry["relative_drop"] = drops.at(kk);
      curve.push_back(entry);
    }
    json assignments = json::array();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      assignments.push_back({{"user", vectors[i].user_id},
                             {"from_window", vectors[i].from_window},
                             {"cluster", chosen->assignments[i]}});
    }
    clusters["k"] = k;
    clusters["elbow_fallback"] = fallback;
    clusters["inertia_curve"] = curve;
    clusters["inertia_history"] = chosen->inertia_history;
    clusters["centroids"] = chosen->centroids;
    clusters["assignments"] = assignments;
  } else {
    clusters["k"] = 0;
    clusters["elbow_fallback"] = true;
    clusters["inertia_curve"] = json::array();
    clusters["inertia_history"] = json::array();
    clusters["centroids"] = json::array();
    clusters["assignments"] = json::array();
  }
  sink.WriteJson("clusters_" + name + ".json", clusters);

  std::ofstream out = sink.Open("increments_" + name + ".csv");
  io::CsvWriter csv(out);
  std::vector<std::string> header = {"cluster", "size"};
  for (const char* prefix : {"rate_", "before_", "after_", "degenerate_"}) {
    for (std::string& c : EmotionColumns(prefix)) header.push_back(std::move(c));
  }
  csv.Row(header);
  if (!chosen) return;
  for (const emotion::IncrementVector& inc :
       emotion::IncrementRates(*chosen, vectors)) {
    std::vector<std::string> row = {Str(inc.cluster), Str(inc.size)};
    AppendFractions(row, inc.rate);
    AppendFractions(row, inc.before);
    AppendFractions(row, inc.after);
    for (bool d : inc.degenerate) row.push_back(d ? "1" : "0");
    csv.Row(row);
  }
}

void EmotionStage(const PipelineConfig& config, ArtifactSink& sink) {
  const fs::path cohort_path = RequireArtifact(config, "cohort.csv", Stage::kOpinion);
  const fs::path affiliation_path =
      RequireArtifact(config, "affiliations.csv", Stage::kCommunity);
  const corpus::Corpus corpus = StageCorpus(config);
  if (corpus.posts.empty()) throw DataError("no posts for emotion series");
  const corpus::WindowPartition partition = Windows(config, corpus);

  const std::vector<std::size_t> selected =
      emotion::SampleDaily(corpus.posts, config.sample_rate, config.seed);
  const Timestamp first = *corpus::EarliestTimestamp(corpus);
  const emotion::EmotionFractionSeries daily = emotion::FractionSeries(
      corpus.posts, selected, emotion::Resolution::kDaily, first);
  const emotion::EmotionFractionSeries smooth =
      emotion::MovingAverage(daily, config.ma_days);
  {
    std::ofstream out = sink.Open("emotion_daily.csv");
    io::CsvWriter csv(out);
    std::vector<std::string> header = {"day", "date", "support"};
    for (std::string& c : EmotionColumns("")) header.push_back(std::move(c));
    header.push_back("ma_support");
    for (std::string& c : EmotionColumns("ma_")) header.push_back(std::move(c));
    csv.Row(header);
    for (std::size_t d = 0; d < daily.size(); ++d) {
      std::vector<std::string> row = {Str(d), io::FormatUtc(daily.UnitStart(d)).substr(0, 10),
                                      Str(daily.support[d])};
      AppendFractions(row, daily.fractions[d]);
      row.push_back(Str(smooth.support[d]));
      AppendFractions(row, smooth.fractions[d]);
      csv.Row(row);
    }
  }

  community::AffiliationIndex affiliation;
  {
    const io::CsvTable table = io::ReadCsv(affiliation_path);
    for (const auto& row : table.rows) {
      const auto label = community::ParseCommunityLabel(row[table.Column("label")]);
      if (!label) throw DataError("unknown label in affiliations.csv");
      affiliation.Set(std::stoi(row[table.Column("window")]),
                      row[table.Column("user")], *label);
    }
  }
  {
    const auto profiles = emotion::CommunityEmotionProfiles(
        corpus.posts, selected, partition, affiliation, partition.origin);
    std::ofstream out = sink.Open("emotion_by_community.csv");
    io::CsvWriter csv(out);
    std::vector<std::string> header = {"label", "week", "week_start", "support"};
    for (std::string& c : EmotionColumns("")) header.push_back(std::move(c));
    csv.Row(header);
    for (const auto& [label, series] : profiles) {
      for (std::size_t w = 0; w < series.size(); ++w) {
        std::vector<std::string> row = {std::string(community::ToString(label)), Str(w),
                                        io::FormatUtc(series.UnitStart(w)).substr(0, 10),
                                        Str(series.support[w])};
        AppendFractions(row, series.fractions[w]);
        csv.Row(row);
      }
    }
  }

  const std::vector<opinion::OpinionShift> cohort = ReadShifts(cohort_path);
  const std::vector<emotion::EmotionVector> vectors =
      emotion::BuildEmotionVectors(cohort, corpus.posts, partition);
  {
    std::ofstream out = sink.Open("emotion_vectors.csv");
    io::CsvWriter csv(out);
    std::vector<std::string> header = {"user", "from_window", "to_window", "direction"};
    for (std::string& c : EmotionColumns("before_")) header.push_back(std::move(c));
    for (std::string& c : EmotionColumns("after_")) header.push_back(std::move(c));
    csv.Row(header);
    for (const emotion::EmotionVector& v : vectors) {
      std::vector<std::string> row = {v.user_id, Str(v.from_window), Str(v.to_window),
                                      std::string(opinion::ToString(v.direction))};
      for (double x : v.values) row.push_back(Str(x));
      csv.Row(row);
    }
  }
  WriteDirectionClusters(config, sink, opinion::ShiftDirection::kToPro, vectors);
  WriteDirectionClusters(config, sink, opinion::ShiftDirection::kToAnti, vectors);
}

// ----------------------------------------------------------------- stats

std::vector<EmotionFractions> ReadRates(const fs::path& path) {
  const io::CsvTable table = io::ReadCsv(path);
  std::vector<EmotionFractions> rates;
  for (const auto& row : table.rows) {
    EmotionFractions r{};
    for (Emotion e : kAllEmotions) {
      r[Index(e)] = std::stod(row[table.Column("rate_" + std::string(ToString(e)))]);
    }
    rates.push_back(r);
  }
  return rates;
}

void StatsStage(const PipelineConfig& config, ArtifactSink& sink) {
  const std::vector<EmotionFractions> anti = ReadRates(
      RequireArtifact(config, "increments_to_anti.csv", Stage::kEmotion));
  const std::vector<EmotionFractions> pro = ReadRates(
      RequireArtifact(config, "increments_to_pro.csv", Stage::kEmotion));
  if (anti.size() < 2 || pro.size() < 2) {
    throw DataError("t-test needs at least two clusters per direction (to_anti " +
                    Str(anti.size()) + ", to_pro " + Str(pro.size()) + ")");
  }
  std::ofstream out = sink.Open("ttest.csv");
  io::CsvWriter csv(out);
  csv.Row({"emotion", "t", "df", "p", "stars", "d", "mean_to_anti", "mean_to_pro",
           "n_to_anti", "n_to_pro", "degenerate"});
  for (Emotion e : kAllEmotions) {
    std::vector<double> a;
    std::vector<double> b;
    for (const EmotionFractions& r : anti) a.push_back(r[Index(e)]);
    for (const EmotionFractions& r : pro) b.push_back(r[Index(e)]);
    const stats::TTestResult t = stats::TwoSampleTTest(a, b);
    csv.Row({std::string(ToString(e)), Str(t.t), Str(t.df), Str(t.p),
             std::string(stats::SignificanceStars(t.p)), Str(t.d), Str(t.mean_a),
             Str(t.mean_b), Str(a.size()), Str(b.size()), t.degenerate ? "1" : "0"});
  }
}

using StageFn = void (*)(const PipelineConfig&, ArtifactSink&);

StageFn StageFunction(Stage stage) {
  switch (stage) {
    case Stage::kCorpus: return CorpusStage;
    case Stage::kTrendseg: return TrendsegStage;
    case Stage::kEventkeys: return EventkeysStage;
    case Stage::kCommunity: return CommunityStage;
    case Stage::kOpinion: return OpinionStage;
    case Stage::kEmotion: return EmotionStage;
    case Stage::kStats: return StatsStage;
  }
  return nullptr;
}

// ---------------------------------------------------------------- config

class ConfigReader {
 public:
  explicit ConfigReader(const json& j) : j_(j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  }

  template <typename T>
  void Read(const char* key, T& field) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    try {
      if constexpr (std::is_same_v<T, fs::path>) {
        field = it->get<std::string>();
      } else if constexpr (std::is_same_v<T, std::optional<Timestamp>>) {
        field = it->is_string() ? io::ParseTimestamp(it->get<std::string>())
                                : it->get<Timestamp>();
      } else if constexpr (std::is_same_v<T, std::vector<Stage>>) {
        field.clear();
        for (const std::string& s : it->get<std::vector<std::string>>()) {
          const std::optional<Stage> stage = ParseStage(s);
          if (!stage) throw ConfigError("unknown stage '" + s + "'");
          field.push_back(*stage);
        }
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!it->is_number_integer()) throw ConfigError("");
        if constexpr (std::is_unsigned_v<T>) {
          if (it->get<long long>() < 0) throw ConfigError("");
        }
        field = it->get<T>();
      } else {
        field = it->get<T>();
      }
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("invalid value for '") + key + "'" +
                        (e.what()[0] ? std::string(": ") + e.what() : ""));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("invalid value for '") + key + "': " + e.what());
    }
  }

  void RejectUnknown() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

 private:
  const json& j_;
  std::set<std::string> seen_;
};

// Single field list shared by parsing and serialization.
template <typename Visitor>
void VisitFields(PipelineConfig& c, Visitor&& v) {
  v("posts", c.posts);
  v("reposts", c.reposts);
  v("out", c.out);
  v("max_reject_fraction", c.max_reject_fraction);
  v("include_tokens", c.include_tokens);
  v("exclude_tokens", c.exclude_tokens);
  v("origin", c.origin);
  v("window_months", c.window_months);
  v("epsilon", c.epsilon);
  v("tau", c.tau);
  v("bin_seconds", c.bin_seconds);
  v("top_peaks", c.top_peaks);
  v("min_count", c.min_count);
  v("top_k", c.top_k);
  v("stopwords", c.stopwords);
  v("ensemble_runs", c.ensemble_runs);
  v("ensemble_agree", c.ensemble_agree);
  v("match_threshold", c.match_threshold);
  v("seeds", c.seeds);
  v("min_seeds", c.min_seeds);
  v("top_influencers", c.top_influencers);
  v("threads", c.threads);
  v("shift_delta", c.shift_delta);
  v("min_posts", c.min_posts);
  v("cohort_cap", c.cohort_cap);
  v("sample_rate", c.sample_rate);
  v("ma_days", c.ma_days);
  v("kmax", c.kmax);
  v("min_k", c.min_k);
  v("restarts", c.restarts);
  v("seed", c.seed);
  v("stages", c.stages);
}

json ConfigJson(const PipelineConfig& config) {
  PipelineConfig copy = config;
  json j = json::object();
  VisitFields(copy, [&j](const char* key, const auto& field) {
    using T = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<T, fs::path>) {
      j[key] = field.string();
    } else if constexpr (std::is_same_v<T, std::optional<Timestamp>>) {
      j[key] = field ? json(*field) : json(nullptr);
    } else if constexpr (std::is_same_v<T, std::vector<Stage>>) {
      json names = json::array();
      for (Stage s : field) names.push_back(std::string(ToString(s)));
      j[key] = names;
    } else {
      j[key] = field;
    }
  });
  return j;
}

std::vector<Stage> SelectedStages(const PipelineConfig& config) {
  if (config.stages.empty()) return {std::begin(kAllStages), std::end(kAllStages)};
  std::vector<Stage> stages = config.stages;
  std::sort(stages.begin(), stages.end());
  stages.erase(std::unique(stages.begin(), stages.end()), stages.end());
  return stages;
}

}  // namespace

std::string_view ToString(Stage stage) {
  switch (stage) {
    case Stage::kCorpus: return "corpus";
    case Stage::kTrendseg: return "trendseg";
    case Stage::kEventkeys: return "eventkeys";
    case Stage::kCommunity: return "community";
    case Stage::kOpinion: return "opinion";
    case Stage::kEmotion: return "emotion";
    case Stage::kStats: return "stats";
  }
  return "unknown";
}

std::optional<Stage> ParseStage(std::string_view text) {
  for (Stage s : kAllStages) {
    if (ToString(s) == text) return s;
  }
  return std::nullopt;
}

PipelineConfig ParseConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("artifacts")) {
    j = j["config"];
  }
  PipelineConfig config;
  ConfigReader reader(j);
  VisitFields(config, [&reader](const char* key, auto& field) { reader.Read(key, field); });
  reader.RejectUnknown();
  return config;
}

PipelineConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string ConfigToJson(const PipelineConfig& config) {
  return ConfigJson(config).dump(2);
}

void ValidateConfig(const PipelineConfig& c) {
  auto fail = [](const std::string& message) { throw ConfigError(message); };
  if (c.out.empty()) fail("an output directory is required");
  const std::vector<Stage> stages = SelectedStages(c);
  const bool ingests =
      std::find(stages.begin(), stages.end(), Stage::kCorpus) != stages.end();
  const bool needs_corpus = std::any_of(stages.begin(), stages.end(),
                                        [](Stage s) { return s != Stage::kStats; });
  const bool reads_inputs =
      ingests || (needs_corpus && !fs::exists(c.out / kCleanPosts));
  if (reads_inputs && c.posts.empty()) fail("a posts file is required");
  if (!(c.max_reject_fraction >= 0.0 && c.max_reject_fraction <= 1.0)) {
    fail("max_reject_fraction must lie in [0, 1]");
  }
  if (c.window_months < 1) fail("window_months must be >= 1");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (c.tau < 1) fail("tau must be >= 1");
  if (c.bin_seconds < 1 || kSecondsPerDay % c.bin_seconds != 0) {
    fail("bin_seconds must divide a day");
  }
  if (c.top_peaks < 1) fail("top_peaks must be >= 1");
  if (c.min_count < 1) fail("min_count must be >= 1");
  if (c.ensemble_runs < 1 || c.ensemble_runs > 65535) {
    fail("ensemble_runs must lie in [1, 65535]");
  }
  if (c.ensemble_agree < 1 || c.ensemble_agree > c.ensemble_runs) {
    fail("ensemble_agree must lie in [1, ensemble_runs]");
  }
  if (!(c.match_threshold > 0.0 && c.match_threshold <= 1.0)) {
    fail("match_threshold must lie in (0, 1]");
  }
  if (c.threads < 0) fail("threads must be >= 0");
  if (!(c.shift_delta > 0.0 && c.shift_delta <= 2.0)) {
    fail("shift_delta must lie in (0, 2]");
  }
  if (c.min_posts < 1) fail("min_posts must be >= 1");
  if (c.cohort_cap < 1) fail("cohort_cap must be >= 1");
  if (!(c.sample_rate > 0.0 && c.sample_rate <= 1.0)) {
    fail("sample_rate must lie in (0, 1]");
  }
  if (c.ma_days < 1) fail("ma_days must be >= 1");
  if (c.min_k < 1) fail("min_k must be >= 1");
  if (c.kmax < c.min_k + 2) fail("kmax must be at least min_k + 2");
  if (c.restarts < 1) fail("restarts must be >= 1");
}

StageReport RunStage(Stage stage, const PipelineConfig& config) {
  ArtifactSink sink(config.out);
  const auto begin = std::chrono::steady_clock::now();
  const std::string name(ToString(stage));
  try {
    StageFunction(stage)(config, sink);
  } catch (const ConfigError&) {
    throw;
  } catch (const DataError& e) {
    throw DataError("stage " + name + ": " + e.what());
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
  StageReport report;
  report.stage = stage;
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  report.artifacts = sink.names();
  return report;
}

RunReport RunPipeline(const PipelineConfig& config) {
  ValidateConfig(config);
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + config.out.string());

  RunReport report;
  for (Stage stage : SelectedStages(config)) {
    report.stages.push_back(RunStage(stage, config));
  }

  json stages = json::array();
  for (const StageReport& s : report.stages) {
    stages.push_back({{"name", std::string(ToString(s.stage))},
                      {"seconds", s.seconds},
                      {"artifacts", s.artifacts}});
    for (const std::string& a : s.artifacts) {
      report.artifact_digests[a] = io::Sha256File(config.out / a);
    }
  }
  json inputs = json::object();
  for (const auto& [role, path] :
       {std::pair<const char*, const fs::path&>{"posts", config.posts},
        {"reposts", config.reposts},
        {"stopwords", config.stopwords},
        {"seeds", config.seeds}}) {
    if (!path.empty() && fs::exists(path)) {
      inputs[role] = {{"path", path.string()}, {"sha256", io::Sha256File(path)}};
    }
  }
  const json manifest = {
      {"tool", "discourse"},
      {"config", ConfigJson(config)},
      {"seeds",
       {{"community_ensemble_base", config.seed},
        {"cohort_sampling", config.seed},
        {"emotion_sampling", config.seed},
        {"kmeans", config.seed}}},
      {"inputs", inputs},
      {"stages", stages},
      {"artifacts", report.artifact_digests},
  };
  report.manifest = config.out / kManifest;
  std::ofstream out(report.manifest, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + report.manifest.string());
  out << manifest.dump(2) << '\n';
  return report;
}

}  // namespace discourse::pipeline
