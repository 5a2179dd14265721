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

#include "discourse/eventkeys.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace discourse::eventkeys {

std::vector<KeywordScore> KeywordScores(
    std::span<const corpus::PostRecord> posts, trendseg::TimeRange section,
    const KeywordOptions& options) {
  if (options.min_count == 0) {
    throw std::invalid_argument("min_count must be at least 1");
  }
  // Ordered map keeps iteration deterministic.
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  std::size_t section_tokens = 0;
  std::size_t corpus_tokens = 0;
  std::size_t section_posts = 0;
  for (const corpus::PostRecord& p : posts) {
    const bool inside =
        p.timestamp >= section.start && p.timestamp < section.end;
    section_posts += inside ? 1 : 0;
    for (const std::string& t : p.tokens) {
      if (options.stopwords.count(t) > 0) continue;
      auto& [in_section, in_corpus] = counts[t];
      ++in_corpus;
      ++corpus_tokens;
      if (inside) {
        ++in_section;
        ++section_tokens;
      }
    }
  }
  if (section_posts == 0) throw DataError("event section contains no posts");

  std::vector<KeywordScore> scores;
  if (section_tokens == 0) return scores;
  for (const auto& [token, c] : counts) {
    const auto [in_section, in_corpus] = c;
    if (in_section == 0 || in_section < options.min_count) continue;
    KeywordScore k;
    k.token = token;
    k.event_count = in_section;
    k.global_count = in_corpus;
    k.event_freq = static_cast<double>(in_section) /
                   static_cast<double>(section_tokens);
    k.global_freq =
        static_cast<double>(in_corpus) / static_cast<double>(corpus_tokens);
    // Same ratio as event_freq / global_freq, computed from exact integers.
    k.score = (static_cast<double>(in_section) *
               static_cast<double>(corpus_tokens)) /
              (static_cast<double>(section_tokens) *
               static_cast<double>(in_corpus));
    scores.push_back(std::move(k));
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const KeywordScore& a, const KeywordScore& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.token < b.token;
                   });
  if (scores.size() > options.top_k) scores.resize(options.top_k);
  return scores;
}

}  // namespace discourse::eventkeys
