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

#ifndef DISCOURSE_TRENDSEG_H_
#define DISCOURSE_TRENDSEG_H_

// Activity series, intra-day seasonality removal and up/down trend
// segmentation with reversal (epsilon) and stagnation (tau) tolerances.

#include <cstddef>
#include <span>
#include <vector>

#include "discourse/corpus.h"
#include "discourse/types.h"

namespace discourse::trendseg {

struct CountSeries {
  Timestamp bin_width = 600;
  // Timestamp of bin 0; a multiple of bin_width.
  Timestamp start = 0;
  std::vector<double> values;

  Timestamp BinStart(std::size_t i) const {
    return start + static_cast<Timestamp>(i) * bin_width;
  }
};

struct SeasonProfile {
  Timestamp slot_width = 600;
  std::size_t slots_per_day = 144;
  // Indexed by time-of-day slot; mean is 1.
  std::vector<double> factors;

  std::size_t SlotOf(Timestamp ts) const;
};

struct SegmenterConfig {
  double epsilon = 0.2;
  int tau = 144;
};

enum class Direction { kUp, kDown };

struct TrendSegment {
  Direction direction = Direction::kUp;
  std::size_t start_index = 0;
  std::size_t end_index = 0;  // inclusive
  std::size_t extremum_index = 0;
  double amplitude = 0.0;
};

struct Peak {
  std::size_t bin_index = 0;
  Timestamp timestamp = 0;
  double height = 0.0;
  int rank = 0;
};

// Post counts per bin from the first occupied bin to the last. Throws
// std::invalid_argument on an empty corpus or a bin width that does not
// divide a day.
CountSeries BinCounts(std::span<const corpus::PostRecord> posts,
                      Timestamp bin_width = 600);

// Per-slot mean over days divided by the mean of all slot means. Dead slots
// are floored to 1% of the smallest positive factor and the profile is
// renormalized. Throws std::invalid_argument for series shorter than a day.
SeasonProfile ComputeSeasonProfile(const CountSeries& series);

// values[i] / factor(slot of bin i).
CountSeries Deseasonalize(const CountSeries& series,
                          const SeasonProfile& profile);

// Alternating segments tiling the series; adjacent segments share their
// boundary extremum. Throws std::invalid_argument for fewer than two values
// or an invalid config.
std::vector<TrendSegment> SegmentTrends(std::span<const double> values,
                                        const SegmenterConfig& config);

// Extrema of up segments, tallest first, earlier bin on ties.
std::vector<Peak> ExtractPeaks(const CountSeries& series,
                               std::span<const TrendSegment> segments,
                               int top_n);

// Half-open time range of the up segment ending at `peak` plus the down
// segment that follows it.
struct TimeRange {
  Timestamp start = 0;
  Timestamp end = 0;
};

TimeRange EventSection(const CountSeries& series,
                       std::span<const TrendSegment> segments,
                       const Peak& peak);

}  // namespace discourse::trendseg

#endif  // DISCOURSE_TRENDSEG_H_
