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


#ifndef DISCOURSE_PIPELINE_H_
#define DISCOURSE_PIPELINE_H_

// End-to-end orchestration: a declarative run configuration, stages that
// talk to each other only through files in the output directory, and a run
// manifest recording configuration, seeds, input digests, timings and
// artifact digests.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "discourse/types.h"

namespace discourse::pipeline {

// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitData = 3,
  kExitStage = 4,
};

// Invalid configuration or command line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stage failed for a reason other than bad input data.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error("stage " + stage + " failed: " + message),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

enum class Stage {
  kCorpus,
  kTrendseg,
  kEventkeys,
  kCommunity,
  kOpinion,
  kEmotion,
  kStats,
};

inline constexpr Stage kAllStages[] = {
    Stage::kCorpus,  Stage::kTrendseg, Stage::kEventkeys, Stage::kCommunity,
    Stage::kOpinion, Stage::kEmotion,  Stage::kStats,
};

std::string_view ToString(Stage stage);
std::optional<Stage> ParseStage(std::string_view text);

struct PipelineConfig {
  // Inputs and output directory.
  std::filesystem::path posts;
  std::filesystem::path reposts;  // optional
  std::filesystem::path out;
  double max_reject_fraction = 0.01;
  // Keep posts with any of these tokens (all posts when empty) and none of
  // the excluded ones.
  std::vector<std::string> include_tokens;
  std::vector<std::string> exclude_tokens;

  // Analysis windows; origin defaults to the month of the earliest record.
  std::optional<Timestamp> origin;
  int window_months = 3;

  // Trend segmentation.
  double epsilon = 0.2;
  int tau = 144;
  Timestamp bin_seconds = 600;
  int top_peaks = 5;

  // Event keywords.
  std::size_t min_count = 5;
  std::size_t top_k = 20;
  std::filesystem::path stopwords;  // one token per line; optional

  // Communities.
  int ensemble_runs = 100;
  int ensemble_agree = 90;
  double match_threshold = 0.5;
  std::filesystem::path seeds;  // JSON label -> user ids; optional
  std::size_t min_seeds = 3;
  std::size_t top_influencers = 20;
  int threads = 0;

  // Opinion shifts.
  double shift_delta = 0.5;
  int min_posts = 5;
  int cohort_cap = 100;

  // Emotions.
  double sample_rate = 0.025;
  int ma_days = 90;
  int kmax = 15;
  int min_k = 2;
  int restarts = 10;

  // Root of every random choice in the run.
  std::uint64_t seed = 1;

  // Stages to execute, in pipeline order; empty means all.
  std::vector<Stage> stages;
};

// Strict JSON parsing: unknown keys and ill-typed values raise ConfigError.
// A run manifest is accepted as well; its "config" object is used.
PipelineConfig ParseConfig(const std::string& json_text);
PipelineConfig LoadConfig(const std::filesystem::path& path);
// Canonical JSON of every field, as recorded in the manifest.
std::string ConfigToJson(const PipelineConfig& config);
// Throws ConfigError naming the first invalid field.
void ValidateConfig(const PipelineConfig& config);

struct StageReport {
  Stage stage = Stage::kCorpus;
  double seconds = 0.0;
  // Files written, relative to the output directory.
  std::vector<std::string> artifacts;
};

struct RunReport {
  std::vector<StageReport> stages;
  // Relative artifact path -> SHA-256 of its contents.
  std::map<std::string, std::string> artifact_digests;
  std::filesystem::path manifest;
};

// Runs the selected stages in order and writes manifest.json. DataError
// propagates unchanged; other stage exceptions become StageError.
RunReport RunPipeline(const PipelineConfig& config);

// Runs a single stage against the output directory.
StageReport RunStage(Stage stage, const PipelineConfig& config);

}  // namespace discourse::pipeline

#endif  // DISCOURSE_PIPELINE_H_
