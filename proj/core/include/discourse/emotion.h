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

#ifndef DISCOURSE_EMOTION_H_
#define DISCOURSE_EMOTION_H_

// Emotion fraction time series (collective and per community), before/after
// emotion vectors of users who shifted opinion, and per-cluster increment
// rates.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "discourse/community.h"
#include "discourse/corpus.h"
#include "discourse/kmeans.h"
#include "discourse/opinion.h"
#include "discourse/types.h"

namespace discourse::emotion {

enum class Resolution { kDaily, kWeekly };

struct EmotionFractionSeries {
  Resolution resolution = Resolution::kDaily;
  // Start of unit 0.
  Timestamp start = 0;
  std::vector<EmotionFractions> fractions;
  // Posts (raw series) or contributing units (smoothed) behind each unit;
  // zero marks an empty unit whose fractions are all zero.
  std::vector<std::size_t> support;

  std::size_t size() const { return fractions.size(); }
  bool Empty(std::size_t unit) const { return support[unit] == 0; }
  Timestamp UnitStart(std::size_t unit) const;
};

// Per UTC day, ceil(rate * count) posts drawn without replacement. Returns
// ascending post indices. Throws std::invalid_argument unless
// 0 < rate <= 1.
std::vector<std::size_t> SampleDaily(std::span<const corpus::PostRecord> posts,
                                     double rate, std::uint64_t seed);

// Fractions of the selected posts per day or week, units counted from
// `start` (floored to a whole day for the daily resolution).
EmotionFractionSeries FractionSeries(std::span<const corpus::PostRecord> posts,
                                     std::span<const std::size_t> selected,
                                     Resolution resolution, Timestamp start);

// SampleDaily followed by a daily FractionSeries from the first post's day.
EmotionFractionSeries DailyEmotionSeries(
    std::span<const corpus::PostRecord> posts, double sample_rate,
    std::uint64_t seed);

// Trailing mean over the non-empty units in (d - span, d].
EmotionFractionSeries MovingAverage(const EmotionFractionSeries& series,
                                    int span);

// Weekly fractions per community label. A selected post counts toward label
// L when its author belongs to an L-labeled community in the window holding
// the post. Every returned series spans the same weeks from `start`.
std::map<community::CommunityLabel, EmotionFractionSeries>
CommunityEmotionProfiles(std::span<const corpus::PostRecord> posts,
                         std::span<const std::size_t> selected,
                         const corpus::WindowPartition& partition,
                         const community::AffiliationIndex& affiliation,
                         Timestamp start);

inline constexpr std::size_t kVectorSize = 2 * kNumEmotions;

struct EmotionVector {
  std::string user_id;
  int from_window = 0;
  int to_window = 0;
  opinion::ShiftDirection direction = opinion::ShiftDirection::kNone;
  // Fractions in the window before the shift, then the window after.
  std::array<double, kVectorSize> values{};
};

// Fractions over all of the user's posts in each of the two windows. Throws
// DataError when a user has no posts in one of them.
std::vector<EmotionVector> BuildEmotionVectors(
    std::span<const opinion::OpinionShift> shifts,
    std::span<const corpus::PostRecord> posts,
    const corpus::WindowPartition& partition);

std::vector<Point> ToPoints(std::span<const EmotionVector> vectors);

// Relative change of the cluster-mean fraction below this baseline is
// reported as an absolute difference and flagged.
inline constexpr double kDegenerateBaseline = 1e-6;

struct IncrementVector {
  int cluster = 0;
  std::size_t size = 0;
  EmotionFractions before{};
  EmotionFractions after{};
  EmotionFractions rate{};
  std::array<bool, kNumEmotions> degenerate{};
};

std::vector<IncrementVector> IncrementRates(
    const ClusteringResult& result, std::span<const EmotionVector> vectors);

}  // namespace discourse::emotion

#endif  // DISCOURSE_EMOTION_H_
