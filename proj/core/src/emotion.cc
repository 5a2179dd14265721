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

#include "discourse/emotion.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace discourse::emotion {

namespace {

Timestamp FloorDiv(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

Timestamp UnitWidth(Resolution resolution) {
  return resolution == Resolution::kDaily ? kSecondsPerDay : kSecondsPerWeek;
}

void Normalize(EmotionFractions& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) return;
  for (double& c : counts) c /= total;
}

}  // namespace

Timestamp EmotionFractionSeries::UnitStart(std::size_t unit) const {
  return start + static_cast<Timestamp>(unit) * UnitWidth(resolution);
}

std::vector<std::size_t> SampleDaily(std::span<const corpus::PostRecord> posts,
                                     double rate, std::uint64_t seed) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("sample rate must lie in (0, 1]");
  }
  std::map<Timestamp, std::vector<std::size_t>> by_day;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    by_day[FloorDiv(posts[i].timestamp, kSecondsPerDay)].push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> selected;
  for (auto& [day, members] : by_day) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(posts[a].timestamp, posts[a].post_id) <
             std::tie(posts[b].timestamp, posts[b].post_id);
    });
    // The small slack keeps products like 0.025 * 40 from rounding up to 2.
    const double want =
        std::ceil(rate * static_cast<double>(members.size()) - 1e-9);
    const std::size_t k = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::max(want, 1.0)), 1, members.size());
    if (k < members.size()) {
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(k);
    }
    selected.insert(selected.end(), members.begin(), members.end());
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

EmotionFractionSeries FractionSeries(std::span<const corpus::PostRecord> posts,
                                     std::span<const std::size_t> selected,
                                     Resolution resolution, Timestamp start) {
  const Timestamp width = UnitWidth(resolution);
  EmotionFractionSeries series;
  series.resolution = resolution;
  series.start = resolution == Resolution::kDaily
                     ? FloorDiv(start, kSecondsPerDay) * kSecondsPerDay
                     : start;
  for (std::size_t i : selected) {
    const Timestamp ts = posts[i].timestamp;
    if (ts < series.start) continue;
    const std::size_t unit =
        static_cast<std::size_t>((ts - series.start) / width);
    if (unit >= series.fractions.size()) {
      series.fractions.resize(unit + 1, EmotionFractions{});
      series.support.resize(unit + 1, 0);
    }
    series.fractions[unit][Index(posts[i].emotion)] += 1.0;
    ++series.support[unit];
  }
  for (EmotionFractions& f : series.fractions) Normalize(f);
  return series;
}

EmotionFractionSeries DailyEmotionSeries(
    std::span<const corpus::PostRecord> posts, double sample_rate,
    std::uint64_t seed) {
  const std::vector<std::size_t> selected = SampleDaily(posts, sample_rate, seed);
  Timestamp start = 0;
  if (!posts.empty()) {
    start = std::min_element(posts.begin(), posts.end(),
                             [](const auto& a, const auto& b) {
                               return a.timestamp < b.timestamp;
                             })
                ->timestamp;
  }
  return FractionSeries(posts, selected, Resolution::kDaily, start);
}

EmotionFractionSeries MovingAverage(const EmotionFractionSeries& series,
                                    int span) {
  if (span < 1) throw std::invalid_argument("moving average span must be >= 1");
  EmotionFractionSeries out;
  out.resolution = series.resolution;
  out.start = series.start;
  out.fractions.assign(series.size(), EmotionFractions{});
  out.support.assign(series.size(), 0);
  const std::size_t width = static_cast<std::size_t>(span);
  for (std::size_t d = 0; d < series.size(); ++d) {
    const std::size_t first = d + 1 >= width ? d + 1 - width : 0;
    EmotionFractions sum{};
    std::size_t count = 0;
    for (std::size_t u = first; u <= d; ++u) {
      if (series.Empty(u)) continue;
      for (std::size_t e = 0; e < kNumEmotions; ++e) {
        sum[e] += series.fractions[u][e];
      }
      ++count;
    }
    if (count == 0) continue;
    for (std::size_t e = 0; e < kNumEmotions; ++e) {
      out.fractions[d][e] = sum[e] / static_cast<double>(count);
    }
    out.support[d] = count;
  }
  return out;
}

std::map<community::CommunityLabel, EmotionFractionSeries>
CommunityEmotionProfiles(std::span<const corpus::PostRecord> posts,
                         std::span<const std::size_t> selected,
                         const corpus::WindowPartition& partition,
                         const community::AffiliationIndex& affiliation,
                         Timestamp start) {
  std::map<community::CommunityLabel, std::vector<std::size_t>> by_label;
  std::size_t units = 0;
  for (std::size_t i : selected) {
    const corpus::PostRecord& p = posts[i];
    if (p.timestamp < start) continue;
    units = std::max(units, static_cast<std::size_t>(
                                (p.timestamp - start) / kSecondsPerWeek) + 1);
    const int w = partition.WindowOf(p.timestamp);
    if (w < 0) continue;
    if (auto label = affiliation.LabelOf(w, p.author_id)) {
      by_label[*label].push_back(i);
    }
  }
  std::map<community::CommunityLabel, EmotionFractionSeries> out;
  for (const auto& [label, indices] : by_label) {
    EmotionFractionSeries s =
        FractionSeries(posts, indices, Resolution::kWeekly, start);
    s.fractions.resize(units, EmotionFractions{});
    s.support.resize(units, 0);
    out.emplace(label, std::move(s));
  }
  return out;
}

std::vector<EmotionVector> BuildEmotionVectors(
    std::span<const opinion::OpinionShift> shifts,
    std::span<const corpus::PostRecord> posts,
    const corpus::WindowPartition& partition) {
  std::unordered_map<std::string, std::vector<std::size_t>> by_author;
  for (const opinion::OpinionShift& s : shifts) by_author[s.user_id];
  for (std::size_t i = 0; i < posts.size(); ++i) {
    auto it = by_author.find(posts[i].author_id);
    if (it != by_author.end()) it->second.push_back(i);
  }

  std::vector<EmotionVector> vectors;
  vectors.reserve(shifts.size());
  for (const opinion::OpinionShift& s : shifts) {
    EmotionFractions before{}, after{};
    double n_before = 0.0, n_after = 0.0;
    for (std::size_t i : by_author.at(s.user_id)) {
      const int w = partition.WindowOf(posts[i].timestamp);
      if (w == s.from_window) {
        before[Index(posts[i].emotion)] += 1.0;
        n_before += 1.0;
      } else if (w == s.to_window) {
        after[Index(posts[i].emotion)] += 1.0;
        n_after += 1.0;
      }
    }
    if (n_before == 0.0 || n_after == 0.0) {
      throw DataError("user " + s.user_id +
                      " has no posts in one of the shift windows");
    }
    EmotionVector v;
    v.user_id = s.user_id;
    v.from_window = s.from_window;
    v.to_window = s.to_window;
    v.direction = s.direction;
    for (std::size_t e = 0; e < kNumEmotions; ++e) {
      v.values[e] = before[e] / n_before;
      v.values[kNumEmotions + e] = after[e] / n_after;
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

std::vector<Point> ToPoints(std::span<const EmotionVector> vectors) {
  std::vector<Point> points;
  points.reserve(vectors.size());
  for (const EmotionVector& v : vectors) {
    points.emplace_back(v.values.begin(), v.values.end());
  }
  return points;
}

std::vector<IncrementVector> IncrementRates(
    const ClusteringResult& result, std::span<const EmotionVector> vectors) {
  if (result.assignments.size() != vectors.size()) {
    throw std::invalid_argument("assignments do not match vectors");
  }
  std::vector<IncrementVector> out(static_cast<std::size_t>(result.k));
  for (int c = 0; c < result.k; ++c) out[c].cluster = c;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    IncrementVector& inc = out[result.assignments[i]];
    ++inc.size;
    for (std::size_t e = 0; e < kNumEmotions; ++e) {
      inc.before[e] += vectors[i].values[e];
      inc.after[e] += vectors[i].values[kNumEmotions + e];
    }
  }
  for (IncrementVector& inc : out) {
    if (inc.size == 0) throw std::invalid_argument("empty cluster");
    for (std::size_t e = 0; e < kNumEmotions; ++e) {
      inc.before[e] /= static_cast<double>(inc.size);
      inc.after[e] /= static_cast<double>(inc.size);
      if (inc.before[e] < kDegenerateBaseline) {
        inc.rate[e] = inc.after[e] - inc.before[e];
        inc.degenerate[e] = true;
      } else {
        inc.rate[e] = (inc.after[e] - inc.before[e]) / inc.before[e];
      }
    }
  }
  return out;
}

}  // namespace discourse::emotion
