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
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace discourse::eventkeys {
namespace {

using ::discourse::testing::Post;

KeywordOptions Options(std::size_t min_count = 1, std::size_t top_k = 100) {
  KeywordOptions o;
  o.min_count = min_count;
  o.top_k = top_k;
  return o;
}

const KeywordScore* Find(const std::vector<KeywordScore>& scores, const std::string& t) {
  auto it = std::find_if(scores.begin(), scores.end(),
                         [&](const KeywordScore& s) { return s.token == t; });
  return it == scores.end() ? nullptr : &*it;
}

TEST(KeywordScoresTest, TwoPostHandExample) {
  // Section holds {a, b}; outside holds {b, c}.
  const std::vector<corpus::PostRecord> posts = {Post("1", "u", 100, {"a", "b"}),
                                                 Post("2", "u", 900, {"b", "c"})};
  const auto scores = KeywordScores(posts, {0, 500}, Options());
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0].token, "a");
  EXPECT_DOUBLE_EQ(scores[0].score, 2.0);
  EXPECT_EQ(scores[1].token, "b");
  EXPECT_DOUBLE_EQ(scores[1].score, 1.0);
  EXPECT_DOUBLE_EQ(scores[0].event_freq, 0.5);
  EXPECT_DOUBLE_EQ(scores[0].global_freq, 0.25);
  EXPECT_EQ(Find(scores, "c"), nullptr);
}

TEST(KeywordScoresTest, UniformTokenScoresOne) {
  std::vector<corpus::PostRecord> posts;
  for (int i = 0; i < 10; ++i) {
    posts.push_back(Post(std::to_string(i), "u", i * 100, {"common", "t" + std::to_string(i)}));
  }
  const auto scores = KeywordScores(posts, {0, 500}, Options());
  const KeywordScore* common = Find(scores, "common");
  ASSERT_NE(common, nullptr);
  EXPECT_DOUBLE_EQ(common->score, 1.0);
}

TEST(KeywordScoresTest, ConcentratedTokenScoresHighest) {
  std::vector<corpus::PostRecord> posts;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> tokens = {"x", "y"};
    if (i < 5) tokens.push_back("burst");
    if (i % 2 == 0) tokens.push_back("spread");
    posts.push_back(Post(std::to_string(i), "u", i * 100, tokens));
  }
  const auto scores = KeywordScores(posts, {0, 500}, Options());
  ASSERT_FALSE(scores.empty());
  EXPECT_EQ(scores[0].token, "burst");
  EXPECT_EQ(scores[0].event_count, scores[0].global_count);
}

TEST(KeywordScoresTest, InvariantUnderCorpusDuplication) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> word(0, 30);
  std::vector<corpus::PostRecord> posts;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> tokens;
    for (int k = 0; k < 4; ++k) tokens.push_back("w" + std::to_string(word(rng)));
    posts.push_back(Post("p" + std::to_string(i), "u", i * 60, tokens));
  }
  std::vector<corpus::PostRecord> doubled = posts;
  for (const auto& p : posts) {
    doubled.push_back(p);
    doubled.back().post_id += "_copy";
  }
  const auto once = KeywordScores(posts, {3000, 6000}, Options(1, 1000));
  const auto twice = KeywordScores(doubled, {3000, 6000}, Options(1, 1000));
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    EXPECT_EQ(once[i].token, twice[i].token);
    EXPECT_NEAR(once[i].score, twice[i].score, 1e-12);
  }
}

TEST(KeywordScoresTest, MinCountTopKAndStopwords) {
  std::vector<corpus::PostRecord> posts;
  for (int i = 0; i < 6; ++i) posts.push_back(Post(std::to_string(i), "u", i, {"often", "the"}));
  posts.push_back(Post("r", "u", 3, {"rare"}));
  KeywordOptions o = Options(5, 1);
  o.stopwords = {"the"};
  const auto scores = KeywordScores(posts, {0, 100}, o);
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_EQ(scores[0].token, "often");
  // Stopwords are excluded from the token totals too.
  EXPECT_DOUBLE_EQ(scores[0].event_freq, 6.0 / 7.0);
}

TEST(KeywordScoresTest, TiesBreakByToken) {
  const std::vector<corpus::PostRecord> posts = {Post("1", "u", 1, {"b", "a", "c"})};
  const auto scores = KeywordScores(posts, {0, 10}, Options());
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(scores[0].token, "a");
  EXPECT_EQ(scores[2].token, "c");
}

TEST(KeywordScoresTest, EmptySectionAndBadOptions) {
  const std::vector<corpus::PostRecord> posts = {Post("1", "u", 1, {"a"})};
  EXPECT_THROW(KeywordScores(posts, {100, 200}, Options()), DataError);
  EXPECT_THROW(KeywordScores(posts, {0, 200}, Options(0)), std::invalid_argument);
}

}  // namespace
}  // namespace discourse::eventkeys
