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

// Command-line front end: one subcommand per pipeline stage, `run` for the
// whole pipeline and `synth` for synthetic corpora.

#include <exception>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "discourse/io.h"
#include "discourse/pipeline.h"
#include "discourse/synthkit.h"
#include "discourse/types.h"

namespace {

using discourse::pipeline::PipelineConfig;
using discourse::pipeline::Stage;

// Flags given on the command line, applied on top of the configuration file.
class Overrides {
 public:
  template <typename T>
  void Add(CLI::App* app, const std::string& flag, T PipelineConfig::*member,
           const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    appliers_.push_back([opt, value, member](PipelineConfig& config) {
      if (opt->count() > 0) config.*member = *value;
    });
  }

  void AddPath(CLI::App* app, const std::string& flag,
               std::filesystem::path PipelineConfig::*member, const std::string& help) {
    auto value = std::make_shared<std::string>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    appliers_.push_back([opt, value, member](PipelineConfig& config) {
      if (opt->count() > 0) config.*member = *value;
    });
  }

  void AddOrigin(CLI::App* app) {
    auto value = std::make_shared<std::string>();
    CLI::Option* opt = app->add_option(
        "--origin", *value, "Window origin: epoch seconds or YYYY-MM-DD");
    appliers_.push_back([opt, value](PipelineConfig& config) {
      if (opt->count() == 0) return;
      try {
        config.origin = discourse::io::ParseTimestamp(*value);
      } catch (const std::exception& e) {
        throw discourse::pipeline::ConfigError(std::string("--origin: ") + e.what());
      }
    });
  }

  void AddStages(CLI::App* app) {
    auto value = std::make_shared<std::vector<std::string>>();
    CLI::Option* opt =
        app->add_option("--stages", *value,
                        "Comma-separated stages: corpus,trendseg,eventkeys,"
                        "community,opinion,emotion,stats")
            ->delimiter(',');
    appliers_.push_back([opt, value](PipelineConfig& config) {
      if (opt->count() == 0) return;
      config.stages.clear();
      for (const std::string& name : *value) {
        auto stage = discourse::pipeline::ParseStage(name);
        if (!stage) throw discourse::pipeline::ConfigError("unknown stage '" + name + "'");
        config.stages.push_back(*stage);
      }
    });
  }

  void Apply(PipelineConfig& config) const {
    for (const auto& apply : appliers_) apply(config);
  }

 private:
  std::vector<std::function<void(PipelineConfig&)>> appliers_;
};

void AddPipelineFlags(CLI::App* app, Overrides& o, std::string& config_path) {
  app->add_option("--config", config_path,
                  "JSON configuration or a previous run's manifest.json");
  o.AddPath(app, "--posts", &PipelineConfig::posts, "Posts file (JSON lines)");
  o.AddPath(app, "--reposts", &PipelineConfig::reposts, "Reposts file (JSON lines)");
  o.AddPath(app, "--out", &PipelineConfig::out, "Output directory");
  o.Add(app, "--max-reject", &PipelineConfig::max_reject_fraction,
        "Abort ingest above this fraction of rejected lines");
  o.Add(app, "--include", &PipelineConfig::include_tokens,
        "Keep only posts containing one of these tokens");
  o.Add(app, "--exclude", &PipelineConfig::exclude_tokens,
        "Drop posts containing any of these tokens");
  o.AddOrigin(app);
  o.Add(app, "--window-months", &PipelineConfig::window_months,
        "Calendar months per analysis window");
  o.Add(app, "--epsilon", &PipelineConfig::epsilon, "Reversal tolerance");
  o.Add(app, "--tau", &PipelineConfig::tau, "Stagnation tolerance in bins");
  o.Add(app, "--bin-seconds", &PipelineConfig::bin_seconds, "Bin width in seconds");
  o.Add(app, "--top-peaks", &PipelineConfig::top_peaks, "Number of peaks to keep");
  o.Add(app, "--min-count", &PipelineConfig::min_count,
        "Minimum in-section count of a keyword");
  o.Add(app, "--top-k", &PipelineConfig::top_k, "Keywords per peak");
  o.AddPath(app, "--stopwords", &PipelineConfig::stopwords,
            "Stopword file, one token per line");
  o.Add(app, "--ensemble-runs", &PipelineConfig::ensemble_runs, "Louvain runs");
  o.Add(app, "--ensemble-agree", &PipelineConfig::ensemble_agree,
        "Runs a pair must agree in to be linked");
  o.Add(app, "--match-threshold", &PipelineConfig::match_threshold,
        "Community matching threshold");
  o.AddPath(app, "--seeds", &PipelineConfig::seeds,
            "Seed users per community label (JSON)");
  o.Add(app, "--min-seeds", &PipelineConfig::min_seeds,
        "Seed users needed to label a community");
  o.Add(app, "--top-influencers", &PipelineConfig::top_influencers,
        "Rows of influencers.csv");
  o.Add(app, "--threads", &PipelineConfig::threads,
        "Worker threads for the ensemble (0 = all cores)");
  o.Add(app, "--shift-delta", &PipelineConfig::shift_delta,
        "Minimum opinion-score change of a shift");
  o.Add(app, "--min-posts", &PipelineConfig::min_posts,
        "Minimum posts in both windows of a shift");
  o.Add(app, "--cohort-cap", &PipelineConfig::cohort_cap,
        "Shifters sampled per window and direction");
  o.Add(app, "--sample-rate", &PipelineConfig::sample_rate,
        "Daily sampling rate for emotion series");
  o.Add(app, "--ma-days", &PipelineConfig::ma_days, "Moving-average span in days");
  o.Add(app, "--kmax", &PipelineConfig::kmax, "Largest k tried");
  o.Add(app, "--min-k", &PipelineConfig::min_k, "Elbow is chosen above this k");
  o.Add(app, "--restarts", &PipelineConfig::restarts, "k-means++ restarts");
  o.Add(app, "--seed", &PipelineConfig::seed, "Root random seed");
}

struct PipelineCommand {
  CLI::App* app = nullptr;
  std::optional<Stage> stage;  // unset for `run`
  Overrides overrides;
  std::string config_path;
};

int RunPipelineCommand(const PipelineCommand& cmd) {
  PipelineConfig config;
  if (!cmd.config_path.empty()) {
    config = discourse::pipeline::LoadConfig(cmd.config_path);
  }
  cmd.overrides.Apply(config);
  if (cmd.stage) config.stages = {*cmd.stage};
  const auto report = discourse::pipeline::RunPipeline(config);
  for (const auto& s : report.stages) {
    std::cerr << ToString(s.stage) << ": " << s.artifacts.size()
              << " artifact(s) in " << s.seconds << " s\n";
  }
  std::cerr << "manifest: " << report.manifest.string() << '\n';
  return discourse::pipeline::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  namespace pl = discourse::pipeline;
  CLI::App app{"Discourse analytics pipeline over post and repost corpora"};
  app.require_subcommand(1);

  const std::pair<const char*, std::optional<Stage>> commands[] = {
      {"ingest", Stage::kCorpus},        {"trends", Stage::kTrendseg},
      {"keywords", Stage::kEventkeys},   {"communities", Stage::kCommunity},
      {"opinions", Stage::kOpinion},     {"emotions", Stage::kEmotion},
      {"ttest", Stage::kStats},          {"run", std::nullopt},
  };
  std::vector<std::unique_ptr<PipelineCommand>> pipeline_commands;
  for (const auto& [name, stage] : commands) {
    auto cmd = std::make_unique<PipelineCommand>();
    cmd->stage = stage;
    cmd->app = app.add_subcommand(
        name, stage ? "Run the " + std::string(pl::ToString(*stage)) + " stage"
                    : std::string("Run the selected stages (default: all)"));
    AddPipelineFlags(cmd->app, cmd->overrides, cmd->config_path);
    if (!stage) cmd->overrides.AddStages(cmd->app);
    pipeline_commands.push_back(std::move(cmd));
  }

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  std::string spec_path;
  std::string synth_out;
  synth->add_option("--spec", spec_path, "Synthetic corpus specification (JSON)")
      ->required();
  synth->add_option("--out", synth_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pl::kExitOk : pl::kExitConfig;
  }

  try {
    if (synth->parsed()) {
      discourse::synthkit::SynthSpec spec;
      try {
        spec = discourse::synthkit::LoadSynthSpec(spec_path);
      } catch (const std::invalid_argument& e) {
        throw pl::ConfigError(e.what());
      }
      discourse::synthkit::WriteSynthOutput(discourse::synthkit::Generate(spec),
                                            synth_out);
      return pl::kExitOk;
    }
    for (const auto& cmd : pipeline_commands) {
      if (cmd->app->parsed()) return RunPipelineCommand(*cmd);
    }
  } catch (const pl::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return pl::kExitConfig;
  } catch (const discourse::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return pl::kExitData;
  } catch (const pl::StageError& e) {
    std::cerr << e.what() << '\n';
    return pl::kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pl::kExitStage;
  }
  return pl::kExitConfig;
}
