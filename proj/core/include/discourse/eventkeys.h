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

#ifndef DISCOURSE_EVENTKEYS_H_
#define DISCOURSE_EVENTKEYS_H_

#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "discourse/corpus.h"
#include "discourse/trendseg.h"

namespace discourse::eventkeys {

struct KeywordScore {
  std::string token;
  double event_freq = 0.0;   // share of section tokens
  double global_freq = 0.0;  // share of all corpus tokens
  double score = 0.0;        // event_freq / global_freq
  std::size_t event_count = 0;
  std::size_t global_count = 0;
};

struct KeywordOptions {
  std::size_t min_count = 5;
  std::size_t top_k = 20;
  std::unordered_set<std::string> stopwords;
};

// Ranks tokens of posts inside `section` by how much more often they occur
// there than across the whole corpus. Ties go to the lexicographically
// smaller token. Throws DataError when the section holds no posts and
// std::invalid_argument when min_count is zero.
std::vector<KeywordScore> KeywordScores(
    std::span<const corpus::PostRecord> posts, trendseg::TimeRange section,
    const KeywordOptions& options);

}  // namespace discourse::eventkeys

#endif  // DISCOURSE_EVENTKEYS_H_
