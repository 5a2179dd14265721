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

#include "discourse/trendseg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace discourse::trendseg {

namespace {

Timestamp FloorDiv(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

Timestamp FloorMod(Timestamp a, Timestamp b) { return a - FloorDiv(a, b) * b; }

void CheckBinWidth(Timestamp bin_width) {
  if (bin_width <= 0 || kSecondsPerDay % bin_width != 0) {
    throw std::invalid_argument("bin width must divide 86400 seconds");
  }
}

}  // namespace

std::size_t SeasonProfile::SlotOf(Timestamp ts) const {
  return static_cast<std::size_t>(FloorMod(ts, kSecondsPerDay) / slot_width);
}

CountSeries BinCounts(std::span<const corpus::PostRecord> posts,
                      Timestamp bin_width) {
  CheckBinWidth(bin_width);
  if (posts.empty()) throw std::invalid_argument("cannot bin an empty corpus");
  auto [lo, hi] = std::minmax_element(
      posts.begin(), posts.end(), [](const auto& a, const auto& b) {
        return a.timestamp < b.timestamp;
      });
  const Timestamp first = FloorDiv(lo->timestamp, bin_width);
  const Timestamp last = FloorDiv(hi->timestamp, bin_width);

  CountSeries series;
  series.bin_width = bin_width;
  series.start = first * bin_width;
  series.values.assign(static_cast<std::size_t>(last - first + 1), 0.0);
  for (const corpus::PostRecord& p : posts) {
    series.values[static_cast<std::size_t>(FloorDiv(p.timestamp, bin_width) -
                                           first)] += 1.0;
  }
  return series;
}

SeasonProfile ComputeSeasonProfile(const CountSeries& series) {
  CheckBinWidth(series.bin_width);
  SeasonProfile profile;
  profile.slot_width = series.bin_width;
  profile.slots_per_day =
      static_cast<std::size_t>(kSecondsPerDay / series.bin_width);
  if (series.values.size() < profile.slots_per_day) {
    throw std::invalid_argument("seasonality needs at least one full day");
  }

  std::vector<double> sums(profile.slots_per_day, 0.0);
  std::vector<double> counts(profile.slots_per_day, 0.0);
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    std::size_t slot = profile.SlotOf(series.BinStart(i));
    sums[slot] += series.values[i];
    counts[slot] += 1.0;
  }
  profile.factors.resize(profile.slots_per_day);
  for (std::size_t s = 0; s < profile.slots_per_day; ++s) {
    profile.factors[s] = sums[s] / counts[s];
  }

  const double n = static_cast<double>(profile.slots_per_day);
  double mean =
      std::accumulate(profile.factors.begin(), profile.factors.end(), 0.0) / n;
  if (mean <= 0.0) {
    std::fill(profile.factors.begin(), profile.factors.end(), 1.0);
    return profile;
  }
  for (double& f : profile.factors) f /= mean;

  double smallest = 0.0;
  for (double f : profile.factors) {
    if (f > 0.0 && (smallest == 0.0 || f < smallest)) smallest = f;
  }
  bool floored = false;
  for (double& f : profile.factors) {
    if (f <= 0.0) {
      f = smallest * 0.01;
      floored = true;
    }
  }
  if (floored) {
    mean = std::accumulate(profile.factors.begin(), profile.factors.end(),
                           0.0) /
           n;
    for (double& f : profile.factors) f /= mean;
  }
  return profile;
}

CountSeries Deseasonalize(const CountSeries& series,
                          const SeasonProfile& profile) {
  if (profile.slot_width != series.bin_width ||
      profile.factors.size() != profile.slots_per_day ||
      profile.slots_per_day * static_cast<std::size_t>(profile.slot_width) !=
          static_cast<std::size_t>(kSecondsPerDay)) {
    throw std::invalid_argument("season profile does not match bin width");
  }
  CountSeries out = series;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] /= profile.factors[profile.SlotOf(series.BinStart(i))];
  }
  return out;
}

std::vector<TrendSegment> SegmentTrends(std::span<const double> values,
                                        const SegmenterConfig& config) {
  if (values.size() < 2) {
    throw std::invalid_argument("segmentation needs at least two values");
  }
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0) || config.tau < 1) {
    throw std::invalid_argument("need 0 < epsilon < 1 and tau >= 1");
  }
  const std::size_t n = values.size();
  const std::size_t tau = static_cast<std::size_t>(config.tau);

  std::size_t first_move = 1;
  while (first_move < n && values[first_move] == values[0]) ++first_move;
  Direction dir = (first_move < n && values[first_move] < values[0])
                      ? Direction::kDown
                      : Direction::kUp;

  std::vector<TrendSegment> segments;
  auto close = [&](std::size_t start, std::size_t end, std::size_t ext) {
    segments.push_back({dir, start, end, ext,
                        std::abs(values[ext] - values[start])});
  };

  std::size_t seg_start = 0;
  std::size_t ext = 0;
  std::size_t i = 1;
  while (i < n) {
    const double v = values[i];
    const double best = values[ext];
    const bool up = dir == Direction::kUp;
    if (up ? v >= best : v <= best) {
      ext = i++;
      continue;
    }
    const bool reversal = up ? v < best * (1.0 - config.epsilon)
                             : v > best * (1.0 + config.epsilon);
    if (reversal || i - ext > tau) {
      close(seg_start, ext, ext);
      seg_start = ext;
      dir = up ? Direction::kDown : Direction::kUp;
      // Bins after the extremum are re-read under the new direction. The
      // first of them is always a new extremum, so seg_start advances.
      i = ext + 1;
      continue;
    }
    ++i;
  }
  close(seg_start, n - 1, ext);
  return segments;
}

std::vector<Peak> ExtractPeaks(const CountSeries& series,
                               std::span<const TrendSegment> segments,
                               int top_n) {
  if (top_n <= 0) throw std::invalid_argument("top_n must be positive");
  std::vector<Peak> peaks;
  for (const TrendSegment& s : segments) {
    if (s.direction != Direction::kUp || s.amplitude <= 0.0) continue;
    if (s.extremum_index >= series.values.size()) {
      throw std::invalid_argument("segment outside series");
    }
    peaks.push_back({s.extremum_index, series.BinStart(s.extremum_index),
                     series.values[s.extremum_index], 0});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) {
                     if (a.height != b.height) return a.height > b.height;
                     return a.bin_index < b.bin_index;
                   });
  if (peaks.size() > static_cast<std::size_t>(top_n)) peaks.resize(top_n);
  for (std::size_t r = 0; r < peaks.size(); ++r) {
    peaks[r].rank = static_cast<int>(r) + 1;
  }
  return peaks;
}

TimeRange EventSection(const CountSeries& series,
                       std::span<const TrendSegment> segments,
                       const Peak& peak) {
  for (std::size_t u = 0; u < segments.size(); ++u) {
    const TrendSegment& s = segments[u];
    if (s.direction != Direction::kUp || s.extremum_index != peak.bin_index) {
      continue;
    }
    std::size_t last = s.end_index;
    if (u + 1 < segments.size()) last = segments[u + 1].end_index;
    return {series.BinStart(s.start_index),
            series.BinStart(last) + series.bin_width};
  }
  throw std::invalid_argument("peak is not the extremum of an up segment");
}

}  // namespace discourse::trendseg
