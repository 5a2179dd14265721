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

#ifndef DISCOURSE_CORPUS_H_
#define DISCOURSE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "discourse/types.h"

namespace discourse::corpus {

struct PostRecord {
  std::string post_id;
  std::string author_id;
  Timestamp timestamp = 0;
  std::vector<std::string> tokens;
  Opinion opinion = Opinion::kNeutral;
  Emotion emotion = Emotion::kNeutral;
};

// Undirected for graph purposes; self-reposts never survive ingest.
struct RepostRecord {
  std::string reposter_id;
  std::string original_author_id;
  Timestamp timestamp = 0;
};

struct Corpus {
  std::vector<PostRecord> posts;
  std::vector<RepostRecord> reposts;
};

enum class RecordSchema { kPosts, kReposts };

// Splits raw text into tokens for records that carry "text" instead of
// "tokens".
using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

std::vector<std::string> WhitespaceTokenizer(std::string_view text);

// Fills labels for records that arrive without them. No implementation ships
// with the library; records lacking labels are rejected when unset.
class PostLabeler {
 public:
  virtual ~PostLabeler() = default;
  virtual std::optional<Opinion> LabelOpinion(const PostRecord& post) = 0;
  virtual std::optional<Emotion> LabelEmotion(const PostRecord& post) = 0;
};

struct LoadOptions {
  // Abort when rejected / total lines exceeds this fraction.
  double max_reject_fraction = 0.01;
  Tokenizer tokenizer = WhitespaceTokenizer;
  PostLabeler* labeler = nullptr;
};

struct LoadReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  // Reposts whose reposter is the original author.
  std::size_t self_reposts = 0;
  // First few rejection messages with line numbers.
  std::vector<std::string> errors;
};

// Reads one line-delimited JSON file into `corpus`. Throws DataError when the
// file is unreadable or the reject fraction exceeds the configured bound.
LoadReport LoadRecords(const std::filesystem::path& path, RecordSchema schema,
                       Corpus& corpus, const LoadOptions& options = {});

Corpus LoadCorpus(const std::filesystem::path& posts_path,
                  const std::optional<std::filesystem::path>& reposts_path,
                  const LoadOptions& options = {},
                  LoadReport* posts_report = nullptr,
                  LoadReport* reposts_report = nullptr);

void WritePosts(const std::vector<PostRecord>& posts,
                const std::filesystem::path& path);
void WriteReposts(const std::vector<RepostRecord>& reposts,
                  const std::filesystem::path& path);

struct AnalysisWindow {
  int index = 0;
  Timestamp start = 0;
  Timestamp end = 0;  // exclusive
  int months = 3;
};

struct WindowPartition {
  Timestamp origin = 0;
  int months = 3;
  std::vector<AnalysisWindow> windows;
  // Indices into Corpus::posts / Corpus::reposts, ascending.
  std::vector<std::vector<std::size_t>> posts;
  std::vector<std::vector<std::size_t>> reposts;

  // Window index for `ts`, or -1 outside [origin, last window end).
  int WindowOf(Timestamp ts) const;
};

std::optional<Timestamp> EarliestTimestamp(const Corpus& corpus);
std::optional<Timestamp> LatestTimestamp(const Corpus& corpus);

// First day of the month containing the earliest record.
Timestamp DefaultOrigin(const Corpus& corpus);

// Windows of `months` calendar months anchored at `origin`, covering every
// record. Throws std::invalid_argument if months < 1 or a record precedes the
// origin.
WindowPartition PartitionWindows(const Corpus& corpus, Timestamp origin,
                                 int months);

// Keeps posts that contain at least one include token (when the include set
// is non-empty) and no exclude token. Reposts are carried over unchanged.
Corpus FilterRecords(const Corpus& corpus,
                     const std::unordered_set<std::string>& include_tokens,
                     const std::unordered_set<std::string>& exclude_tokens);

}  // namespace discourse::corpus

#endif  // DISCOURSE_CORPUS_H_
