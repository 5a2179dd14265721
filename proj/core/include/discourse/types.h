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

#ifndef DISCOURSE_TYPES_H_
#define DISCOURSE_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace discourse {

// UTC epoch seconds.
using Timestamp = std::int64_t;

inline constexpr Timestamp kSecondsPerDay = 86400;
inline constexpr Timestamp kSecondsPerWeek = 7 * kSecondsPerDay;

// Raised when input records or artifacts cannot be used as data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Opinion { kPro, kNeutral, kAnti };

inline constexpr std::array<Opinion, 3> kAllOpinions = {
    Opinion::kPro, Opinion::kNeutral, Opinion::kAnti};

// Fixed ordering used by every emotion vector, series and CSV column.
enum class Emotion {
  kAnger,
  kConfusion,
  kDepression,
  kFatigue,
  kTension,
  kVigor,
  kNeutral,
};

inline constexpr std::size_t kNumEmotions = 7;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions = {
    Emotion::kAnger,   Emotion::kConfusion, Emotion::kDepression,
    Emotion::kFatigue, Emotion::kTension,   Emotion::kVigor,
    Emotion::kNeutral};

using EmotionFractions = std::array<double, kNumEmotions>;

constexpr std::size_t Index(Emotion e) { return static_cast<std::size_t>(e); }

std::string_view ToString(Opinion opinion);
std::string_view ToString(Emotion emotion);
std::optional<Opinion> ParseOpinion(std::string_view text);
std::optional<Emotion> ParseEmotion(std::string_view text);

}  // namespace discourse

#endif  // DISCOURSE_TYPES_H_
