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

#include "discourse/types.h"

namespace discourse {

namespace {

constexpr std::array<std::string_view, 3> kOpinionNames = {"pro", "neutral",
                                                           "anti"};
constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "Anger", "Confusion", "Depression", "Fatigue",
    "Tension", "Vigor",   "Neutral"};

}  // namespace

std::string_view ToString(Opinion opinion) {
  return kOpinionNames[static_cast<std::size_t>(opinion)];
}

std::string_view ToString(Emotion emotion) {
  return kEmotionNames[Index(emotion)];
}

std::optional<Opinion> ParseOpinion(std::string_view text) {
  for (Opinion o : kAllOpinions) {
    if (ToString(o) == text) return o;
  }
  return std::nullopt;
}

std::optional<Emotion> ParseEmotion(std::string_view text) {
  for (Emotion e : kAllEmotions) {
    if (ToString(e) == text) return e;
  }
  return std::nullopt;
}

}  // namespace discourse
