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

#include "discourse/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "discourse/io.h"
#include "json.hpp"

namespace discourse::corpus {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxReportedErrors = 20;

// Thrown per line and turned into a rejection.
struct LineError {
  std::string message;
};

std::string RequireString(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw LineError{std::string("missing string field '") + key + "'"};
  }
  return it->get<std::string>();
}

Timestamp RequireTimestamp(const json& obj) {
  auto it = obj.find("ts");
  if (it == obj.end() || !it->is_number_integer()) {
    throw LineError{"missing integer field 'ts'"};
  }
  return it->get<Timestamp>();
}

PostRecord ParsePost(const json& obj, const LoadOptions& options) {
  PostRecord post;
  post.post_id = RequireString(obj, "id");
  post.author_id = RequireString(obj, "author");
  post.timestamp = RequireTimestamp(obj);

  if (auto it = obj.find("tokens"); it != obj.end()) {
    if (!it->is_array()) throw LineError{"'tokens' is not an array"};
    for (const json& t : *it) {
      if (!t.is_string()) throw LineError{"non-string token"};
      post.tokens.push_back(t.get<std::string>());
    }
  } else if (auto text = obj.find("text");
             text != obj.end() && text->is_string()) {
    post.tokens = options.tokenizer(text->get<std::string>());
  } else {
    throw LineError{"missing 'tokens'"};
  }

  std::optional<Opinion> opinion;
  std::optional<Emotion> emotion;
  if (auto it = obj.find("opinion"); it != obj.end()) {
    if (!it->is_string()) throw LineError{"'opinion' is not a string"};
    opinion = ParseOpinion(it->get<std::string>());
    if (!opinion) throw LineError{"unknown opinion label"};
  } else if (options.labeler != nullptr) {
    opinion = options.labeler->LabelOpinion(post);
  }
  if (auto it = obj.find("emotion"); it != obj.end()) {
    if (!it->is_string()) throw LineError{"'emotion' is not a string"};
    emotion = ParseEmotion(it->get<std::string>());
    if (!emotion) throw LineError{"unknown emotion label"};
  } else if (options.labeler != nullptr) {
    emotion = options.labeler->LabelEmotion(post);
  }
  if (!opinion) throw LineError{"missing opinion label"};
  if (!emotion) throw LineError{"missing emotion label"};
  post.opinion = *opinion;
  post.emotion = *emotion;
  return post;
}

RepostRecord ParseRepost(const json& obj) {
  RepostRecord repost;
  repost.reposter_id = RequireString(obj, "reposter");
  repost.original_author_id = RequireString(obj, "author");
  repost.timestamp = RequireTimestamp(obj);
  return repost;
}

bool IsBlank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::vector<std::string> WhitespaceTokenizer(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

LoadReport LoadRecords(const std::filesystem::path& path, RecordSchema schema,
                       Corpus& corpus, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());

  std::unordered_set<std::string> seen_ids;
  for (const PostRecord& p : corpus.posts) seen_ids.insert(p.post_id);

  LoadReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    try {
      json obj = json::parse(line);
      if (!obj.is_object()) throw LineError{"not a JSON object"};
      if (schema == RecordSchema::kPosts) {
        PostRecord post = ParsePost(obj, options);
        if (!seen_ids.insert(post.post_id).second) {
          throw LineError{"duplicate post id '" + post.post_id + "'"};
        }
        corpus.posts.push_back(std::move(post));
      } else {
        RepostRecord repost = ParseRepost(obj);
        if (repost.reposter_id == repost.original_author_id) {
          ++report.self_reposts;
          ++report.accepted;
          continue;
        }
        corpus.reposts.push_back(std::move(repost));
      }
      ++report.accepted;
    } catch (const json::exception& e) {
      ++report.rejected;
      if (report.errors.size() < kMaxReportedErrors) {
        report.errors.push_back(path.filename().string() + ":" +
                                std::to_string(line_no) + ": " + e.what());
      }
    } catch (const LineError& e) {
      ++report.rejected;
      if (report.errors.size() < kMaxReportedErrors) {
        report.errors.push_back(path.filename().string() + ":" +
                                std::to_string(line_no) + ": " + e.message);
      }
    }
  }

  const std::size_t total = report.accepted + report.rejected;
  if (total > 0 && static_cast<double>(report.rejected) >
                       options.max_reject_fraction * static_cast<double>(total)) {
    throw DataError(path.string() + ": " + std::to_string(report.rejected) +
                    " of " + std::to_string(total) +
                    " lines rejected, above the configured threshold" +
                    (report.errors.empty() ? "" : " (" + report.errors[0] + ")"));
  }
  return report;
}

Corpus LoadCorpus(const std::filesystem::path& posts_path,
                  const std::optional<std::filesystem::path>& reposts_path,
                  const LoadOptions& options, LoadReport* posts_report,
                  LoadReport* reposts_report) {
  Corpus corpus;
  LoadReport pr = LoadRecords(posts_path, RecordSchema::kPosts, corpus, options);
  if (posts_report != nullptr) *posts_report = pr;
  if (reposts_path) {
    LoadReport rr =
        LoadRecords(*reposts_path, RecordSchema::kReposts, corpus, options);
    if (reposts_report != nullptr) *reposts_report = rr;
  }
  return corpus;
}

void WritePosts(const std::vector<PostRecord>& posts,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const PostRecord& p : posts) {
    json obj = {{"id", p.post_id},
                {"author", p.author_id},
                {"ts", p.timestamp},
                {"tokens", p.tokens},
                {"opinion", ToString(p.opinion)},
                {"emotion", ToString(p.emotion)}};
    out << obj.dump() << '\n';
  }
}

void WriteReposts(const std::vector<RepostRecord>& reposts,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const RepostRecord& r : reposts) {
    json obj = {{"reposter", r.reposter_id},
                {"author", r.original_author_id},
                {"ts", r.timestamp}};
    out << obj.dump() << '\n';
  }
}

int WindowPartition::WindowOf(Timestamp ts) const {
  if (windows.empty() || ts < windows.front().start ||
      ts >= windows.back().end) {
    return -1;
  }
  auto it = std::upper_bound(
      windows.begin(), windows.end(), ts,
      [](Timestamp t, const AnalysisWindow& w) { return t < w.start; });
  return std::prev(it)->index;
}

std::optional<Timestamp> EarliestTimestamp(const Corpus& corpus) {
  std::optional<Timestamp> best;
  for (const PostRecord& p : corpus.posts) {
    if (!best || p.timestamp < *best) best = p.timestamp;
  }
  for (const RepostRecord& r : corpus.reposts) {
    if (!best || r.timestamp < *best) best = r.timestamp;
  }
  return best;
}

std::optional<Timestamp> LatestTimestamp(const Corpus& corpus) {
  std::optional<Timestamp> best;
  for (const PostRecord& p : corpus.posts) {
    if (!best || p.timestamp > *best) best = p.timestamp;
  }
  for (const RepostRecord& r : corpus.reposts) {
    if (!best || r.timestamp > *best) best = r.timestamp;
  }
  return best;
}

Timestamp DefaultOrigin(const Corpus& corpus) {
  std::optional<Timestamp> earliest = EarliestTimestamp(corpus);
  if (!earliest) throw std::invalid_argument("empty corpus has no origin");
  return io::MonthStart(*earliest);
}

WindowPartition PartitionWindows(const Corpus& corpus, Timestamp origin,
                                 int months) {
  if (months < 1) throw std::invalid_argument("window months must be >= 1");
  WindowPartition partition;
  partition.origin = origin;
  partition.months = months;

  std::optional<Timestamp> earliest = EarliestTimestamp(corpus);
  std::optional<Timestamp> latest = LatestTimestamp(corpus);
  if (!earliest) return partition;
  if (*earliest < origin) {
    throw std::invalid_argument("origin " + io::FormatUtc(origin) +
                                " is after the earliest record " +
                                io::FormatUtc(*earliest));
  }

  for (int i = 0;; ++i) {
    AnalysisWindow w;
    w.index = i;
    w.start = io::AddMonths(origin, i * months);
    w.end = io::AddMonths(origin, (i + 1) * months);
    w.months = months;
    partition.windows.push_back(w);
    if (w.end > *latest) break;
  }
  partition.posts.resize(partition.windows.size());
  partition.reposts.resize(partition.windows.size());
  for (std::size_t i = 0; i < corpus.posts.size(); ++i) {
    partition.posts[partition.WindowOf(corpus.posts[i].timestamp)].push_back(i);
  }
  for (std::size_t i = 0; i < corpus.reposts.size(); ++i) {
    partition.reposts[partition.WindowOf(corpus.reposts[i].timestamp)]
        .push_back(i);
  }
  return partition;
}

Corpus FilterRecords(const Corpus& corpus,
                     const std::unordered_set<std::string>& include_tokens,
                     const std::unordered_set<std::string>& exclude_tokens) {
  Corpus out;
  out.reposts = corpus.reposts;
  for (const PostRecord& p : corpus.posts) {
    bool included = include_tokens.empty();
    bool excluded = false;
    for (const std::string& t : p.tokens) {
      if (!included && include_tokens.count(t) > 0) included = true;
      if (exclude_tokens.count(t) > 0) {
        excluded = true;
        break;
      }
    }
    if (included && !excluded) out.posts.push_back(p);
  }
  return out;
}

}  // namespace discourse::corpus
