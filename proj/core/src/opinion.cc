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

#include "discourse/opinion.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

namespace discourse::opinion {

namespace {

constexpr double kLeaningBand = 0.3;

}  // namespace

std::string_view ToString(ShiftDirection direction) {
  static constexpr std::array<std::string_view, 3> kNames = {"none", "to_pro",
                                                             "to_anti"};
  return kNames[static_cast<std::size_t>(direction)];
}

double OpinionScore(int pro, int neutral, int anti) {
  if (pro < 0 || neutral < 0 || anti < 0) {
    throw std::invalid_argument("opinion counts must be non-negative");
  }
  const int total = pro + neutral + anti;
  if (total == 0) throw std::invalid_argument("opinion score of zero posts");
  return static_cast<double>(pro - anti) / static_cast<double>(total);
}

Opinion ClassifyLeaning(double score) {
  if (score > kLeaningBand) return Opinion::kPro;
  if (score < -kLeaningBand) return Opinion::kAnti;
  return Opinion::kNeutral;
}

std::vector<OpinionProfile> ComputeProfiles(
    std::span<const corpus::PostRecord> posts,
    const corpus::WindowPartition& partition) {
  std::map<std::pair<std::string, int>, std::array<int, 3>> counts;
  for (const corpus::PostRecord& p : posts) {
    const int w = partition.WindowOf(p.timestamp);
    if (w < 0) continue;
    ++counts[{p.author_id, w}][static_cast<std::size_t>(p.opinion)];
  }
  std::vector<OpinionProfile> profiles;
  profiles.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    OpinionProfile prof;
    prof.user_id = key.first;
    prof.window = key.second;
    prof.pro = c[static_cast<std::size_t>(Opinion::kPro)];
    prof.neutral = c[static_cast<std::size_t>(Opinion::kNeutral)];
    prof.anti = c[static_cast<std::size_t>(Opinion::kAnti)];
    prof.score = OpinionScore(prof.pro, prof.neutral, prof.anti);
    profiles.push_back(std::move(prof));
  }
  return profiles;
}

std::vector<OpinionShift> DetectShifts(std::span<const OpinionProfile> profiles,
                                       const ShiftCriteria& criteria) {
  std::vector<const OpinionProfile*> sorted;
  sorted.reserve(profiles.size());
  for (const OpinionProfile& p : profiles) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::tie(a->user_id, a->window) < std::tie(b->user_id, b->window);
  });

  std::vector<OpinionShift> shifts;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const OpinionProfile& from = *sorted[i];
    const OpinionProfile& to = *sorted[i + 1];
    if (from.user_id != to.user_id || to.window != from.window + 1) continue;

    OpinionShift s;
    s.user_id = from.user_id;
    s.from_window = from.window;
    s.to_window = to.window;
    s.from_score = from.score;
    s.to_score = to.score;
    s.from_posts = from.Total();
    s.to_posts = to.Total();

    // |a2/t2 - a1/t1| >= delta  <=>  |a2*t1 - a1*t2| >= delta*t1*t2.
    const std::int64_t t1 = from.Total();
    const std::int64_t t2 = to.Total();
    const std::int64_t cross = static_cast<std::int64_t>(to.pro - to.anti) * t1 -
                               static_cast<std::int64_t>(from.pro - from.anti) * t2;
    const bool large = static_cast<double>(std::llabs(cross)) >=
                       criteria.min_delta * static_cast<double>(t1 * t2);
    s.eligible = large && s.from_posts >= criteria.min_posts &&
                 s.to_posts >= criteria.min_posts;

    const Opinion before = ClassifyLeaning(from.score);
    const Opinion after = ClassifyLeaning(to.score);
    if (after == Opinion::kPro && before != Opinion::kPro) {
      s.direction = ShiftDirection::kToPro;
    } else if (after == Opinion::kAnti && before != Opinion::kAnti) {
      s.direction = ShiftDirection::kToAnti;
    }
    shifts.push_back(std::move(s));
  }
  return shifts;
}

std::vector<OpinionShift> SampleShifters(std::span<const OpinionShift> shifts,
                                         int cap, std::uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("cohort cap must be at least 1");
  std::map<std::pair<int, ShiftDirection>, std::vector<const OpinionShift*>>
      strata;
  for (const OpinionShift& s : shifts) {
    if (!s.eligible || s.direction == ShiftDirection::kNone) continue;
    strata[{s.to_window, s.direction}].push_back(&s);
  }
  std::mt19937_64 rng(seed);
  std::vector<OpinionShift> sampled;
  for (auto& [key, members] : strata) {
    std::sort(members.begin(), members.end(), [](const auto* a, const auto* b) {
      return std::tie(a->user_id, a->from_window) <
             std::tie(b->user_id, b->from_window);
    });
    if (members.size() > static_cast<std::size_t>(cap)) {
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(static_cast<std::size_t>(cap));
      std::sort(members.begin(), members.end(),
                [](const auto* a, const auto* b) {
                  return std::tie(a->user_id, a->from_window) <
                         std::tie(b->user_id, b->from_window);
                });
    }
    for (const OpinionShift* s : members) sampled.push_back(*s);
  }
  return sampled;
}

}  // namespace discourse::opinion
