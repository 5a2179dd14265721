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

#ifndef DISCOURSE_SYNTHKIT_H_
#define DISCOURSE_SYNTHKIT_H_

// Synthetic corpora with planted ground truth: intra-day seasonality,
// bursts, block-structured repost networks and opinion-shift cohorts with
// known emotion mixes.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "discourse/corpus.h"
#include "discourse/graph.h"
#include "discourse/opinion.h"
#include "discourse/trendseg.h"
#include "discourse/types.h"

namespace discourse::synthkit {

// Indexed by Opinion: pro, neutral, anti.
using OpinionMix = std::array<double, 3>;

struct BurstSpec {
  // Apex offset from the spec start, in seconds.
  Timestamp apex = 0;
  // Full base width of the triangular pulse, in seconds.
  Timestamp width = 7200;
  // Intensity multiple at the apex.
  double magnitude = 6.0;
  std::vector<std::string> topic;
};

struct BlockSpec {
  std::size_t size = 50;
  // Community label name for seed lists; empty for unlabeled blocks.
  std::string label;
  EmotionFractions emotion_mix{0, 0, 0, 0, 0, 0, 1};
  OpinionMix opinion_mix{0, 1, 0};
};

struct CohortSpec {
  std::size_t size = 20;
  opinion::ShiftDirection direction = opinion::ShiftDirection::kToPro;
  int from_window = 0;
  int posts_per_window = 10;
  EmotionFractions before_emotions{0, 0, 0, 0, 0, 0, 1};
  EmotionFractions after_emotions{0, 0, 0, 0, 0, 0, 1};
  OpinionMix before_opinions{0, 1, 0};
  OpinionMix after_opinions{1, 0, 0};
};

struct SynthSpec {
  std::uint64_t seed = 1;
  Timestamp start = 1593561600;  // 2020-07-01T00:00:00Z
  int days = 30;
  double base_rate = 2000.0;  // posts per day before seasonality and bursts
  // 144 ten-minute factors; empty means flat. Rescaled to mean 1.
  std::vector<double> season_profile;
  std::vector<BurstSpec> bursts;
  std::size_t vocabulary = 200;
  // Background tokens per post; burst posts also carry the topic tokens.
  std::size_t tokens_per_post = 5;
  // Authors of background posts when no blocks are given.
  std::size_t background_users = 500;
  EmotionFractions emotion_mix{1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7,
                               1.0 / 7, 1.0 / 7, 1.0 / 7};
  OpinionMix opinion_mix{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::vector<BlockSpec> blocks;
  double p_in = 0.3;
  double p_out = 0.01;
  int window_months = 3;
  std::vector<CohortSpec> cohorts;
};

struct PlantedBurst {
  Timestamp apex = 0;
  std::size_t apex_bin = 0;
  double magnitude = 0.0;
  std::vector<std::string> topic;
};

struct PlantedBlock {
  std::string label;
  std::vector<std::string> members;
  EmotionFractions emotion_mix{};
};

struct PlantedCohort {
  opinion::ShiftDirection direction = opinion::ShiftDirection::kNone;
  int from_window = 0;
  int to_window = 0;
  std::vector<std::string> members;
  EmotionFractions before_emotions{};
  EmotionFractions after_emotions{};
};

struct GroundTruth {
  Timestamp origin = 0;
  int window_months = 3;
  Timestamp series_start = 0;
  Timestamp bin_width = 600;
  std::vector<double> season_factors;
  std::vector<PlantedBurst> bursts;
  std::vector<PlantedBlock> blocks;
  std::vector<PlantedCohort> cohorts;
};

struct SynthOutput {
  corpus::Corpus corpus;
  GroundTruth truth;
};

// Throws std::invalid_argument naming the first violated constraint.
void Validate(const SynthSpec& spec);

SynthSpec LoadSynthSpec(const std::filesystem::path& path);
SynthSpec ParseSynthSpec(const std::string& json_text);

// Seeded draws; identical specs give identical corpora.
SynthOutput Generate(const SynthSpec& spec);

// posts.jsonl, reposts.jsonl and ground_truth.json under `dir`.
void WriteSynthOutput(const SynthOutput& output, const std::filesystem::path& dir);

// Background intensity per ten-minute bin (posts per bin), no sampling noise.
trendseg::CountSeries ExpectedCountSeries(const SynthSpec& spec);

// Poisson counts per bin from the same intensity, without materializing
// posts.
trendseg::CountSeries SampleCountSeries(const SynthSpec& spec);

struct PlantedGraph {
  community::WeightedGraph graph;
  std::vector<int> blocks;
};

// Stochastic block model with equal blocks and unit edge weights.
PlantedGraph PlantedPartitionGraph(std::size_t num_blocks,
                                   std::size_t block_size, double p_in,
                                   double p_out, std::uint64_t seed);

}  // namespace discourse::synthkit

#endif  // DISCOURSE_SYNTHKIT_H_
