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

#ifndef DISCOURSE_OPINION_H_
#define DISCOURSE_OPINION_H_

// Per-user opinion scores per analysis window, leaning classification,
// opinion-shift detection and balanced cohort sampling.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "discourse/corpus.h"
#include "discourse/types.h"

namespace discourse::opinion {

struct OpinionProfile {
  std::string user_id;
  int window = 0;
  int pro = 0;
  int neutral = 0;
  int anti = 0;
  double score = 0.0;

  int Total() const { return pro + neutral + anti; }
};

enum class ShiftDirection { kNone, kToPro, kToAnti };

std::string_view ToString(ShiftDirection direction);

struct OpinionShift {
  std::string user_id;
  int from_window = 0;
  int to_window = 0;
  double from_score = 0.0;
  double to_score = 0.0;
  int from_posts = 0;
  int to_posts = 0;
  ShiftDirection direction = ShiftDirection::kNone;
  bool eligible = false;
};

struct ShiftCriteria {
  double min_delta = 0.5;
  int min_posts = 5;
};

// (pro - anti) / (pro + neutral + anti). Throws std::invalid_argument when
// all counts are zero or any is negative.
double OpinionScore(int pro, int neutral, int anti);

// Above 0.3 is pro, below -0.3 is anti, the closed band between is neutral.
Opinion ClassifyLeaning(double score);

// One profile per (user, window) with at least one post, sorted by user then
// window.
std::vector<OpinionProfile> ComputeProfiles(
    std::span<const corpus::PostRecord> posts,
    const corpus::WindowPartition& partition);

// One shift per user and adjacent window pair where both windows have posts.
// |delta| is compared on exact integer cross-products, so boundary cases
// such as 0.7 -> 0.2 are not lost to rounding.
std::vector<OpinionShift> DetectShifts(std::span<const OpinionProfile> profiles,
                                       const ShiftCriteria& criteria = {});

// Eligible to-pro / to-anti shifts, at most `cap` drawn uniformly without
// replacement from each (to_window, direction) stratum. Output is ordered by
// stratum then user and does not depend on input order.
std::vector<OpinionShift> SampleShifters(std::span<const OpinionShift> shifts,
                                         int cap, std::uint64_t seed);

}  // namespace discourse::opinion

#endif  // DISCOURSE_OPINION_H_
