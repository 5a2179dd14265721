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

#include "discourse/synthkit.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "discourse/community.h"
#include "discourse/io.h"
#include "json.hpp"

namespace discourse::synthkit {

namespace {

using nlohmann::json;

constexpr Timestamp kBinWidth = 600;
constexpr std::size_t kSlotsPerDay = 144;

void CheckMix(std::span<const double> mix, const std::string& what) {
  double total = 0.0;
  for (double p : mix) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("invalid spec: " + what +
                                  " has a value outside [0, 1]");
    }
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("invalid spec: " + what + " does not sum to 1");
  }
}

std::vector<double> SeasonFactors(const SynthSpec& spec) {
  if (spec.season_profile.empty()) return std::vector<double>(kSlotsPerDay, 1.0);
  std::vector<double> f = spec.season_profile;
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / f.size();
  for (double& x : f) x /= mean;
  return f;
}

Timestamp SeriesStart(const SynthSpec& spec) {
  return spec.start - ((spec.start % kBinWidth) + kBinWidth) % kBinWidth;
}

// Intensity multiple contributed by each burst at time t, beyond the base.
std::vector<double> BurstExcess(const SynthSpec& spec, Timestamp t) {
  std::vector<double> excess(spec.bursts.size(), 0.0);
  for (std::size_t b = 0; b < spec.bursts.size(); ++b) {
    const BurstSpec& burst = spec.bursts[b];
    const double half = static_cast<double>(burst.width) / 2.0;
    const double dist =
        std::fabs(static_cast<double>(t - (spec.start + burst.apex)));
    if (dist < half) excess[b] = (burst.magnitude - 1.0) * (1.0 - dist / half);
  }
  return excess;
}

std::string UserName(const char* prefix, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
  return buf;
}

// Counts proportional to `mix` summing to `total` (largest remainder, ties to
// the lower index).
std::array<int, 3> ApportionOpinions(const OpinionMix& mix, int total) {
  std::array<int, 3> counts{};
  std::array<double, 3> rem{};
  int assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = mix[i] * total;
    counts[i] = static_cast<int>(std::floor(exact + 1e-9));
    rem[i] = exact - counts[i];
    assigned += counts[i];
  }
  while (assigned < total) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (rem[i] > rem[best]) best = i;
    }
    ++counts[best];
    rem[best] = -1.0;
    ++assigned;
  }
  return counts;
}

template <typename Array>
Array ReadArray(const json& j, const char* key, const Array& fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  Array out{};
  if (!it->is_array() || it->size() != out.size()) {
    throw std::invalid_argument(std::string("invalid spec: '") + key +
                                "' must have " + std::to_string(out.size()) +
                                " entries");
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*it)[i].get<double>();
  return out;
}

opinion::ShiftDirection ParseDirection(const std::string& text) {
  if (text == "to_pro") return opinion::ShiftDirection::kToPro;
  if (text == "to_anti") return opinion::ShiftDirection::kToAnti;
  throw std::invalid_argument("invalid spec: unknown cohort direction " + text);
}

json MixJson(std::span<const double> mix) {
  return json(std::vector<double>(mix.begin(), mix.end()));
}

}  // namespace

void Validate(const SynthSpec& spec) {
  if (spec.days < 1) throw std::invalid_argument("invalid spec: days < 1");
  if (!(spec.base_rate >= 0.0)) {
    throw std::invalid_argument("invalid spec: negative base rate");
  }
  if (!spec.season_profile.empty()) {
    if (spec.season_profile.size() != kSlotsPerDay) {
      throw std::invalid_argument("invalid spec: season profile needs 144 factors");
    }
    for (double f : spec.season_profile) {
      if (!(f > 0.0)) {
        throw std::invalid_argument("invalid spec: season factors must be > 0");
      }
    }
  }
  for (const BurstSpec& b : spec.bursts) {
    if (b.width <= 0 || b.magnitude < 1.0 || b.apex < 0 ||
        b.apex >= static_cast<Timestamp>(spec.days) * kSecondsPerDay) {
      throw std::invalid_argument("invalid spec: burst outside the period");
    }
  }
  if (spec.vocabulary == 0) throw std::invalid_argument("invalid spec: vocabulary");
  if (spec.blocks.empty() && spec.background_users == 0) {
    throw std::invalid_argument("invalid spec: no authors");
  }
  CheckMix(spec.emotion_mix, "emotion_mix");
  CheckMix(spec.opinion_mix, "opinion_mix");
  for (const BlockSpec& b : spec.blocks) {
    if (b.size == 0) throw std::invalid_argument("invalid spec: empty block");
    if (!b.label.empty() && !community::ParseCommunityLabel(b.label)) {
      throw std::invalid_argument("invalid spec: unknown block label " + b.label);
    }
    CheckMix(b.emotion_mix, "block emotion_mix");
    CheckMix(b.opinion_mix, "block opinion_mix");
  }
  if (!(spec.p_in >= 0.0 && spec.p_in <= 1.0 && spec.p_out >= 0.0 &&
        spec.p_out <= 1.0)) {
    throw std::invalid_argument("invalid spec: repost probabilities");
  }
  if (spec.window_months < 1) {
    throw std::invalid_argument("invalid spec: window_months < 1");
  }
  const Timestamp end = spec.start + spec.days * kSecondsPerDay;
  const Timestamp origin = io::MonthStart(spec.start);
  for (const CohortSpec& c : spec.cohorts) {
    if (c.direction == opinion::ShiftDirection::kNone || c.posts_per_window < 1 ||
        c.from_window < 0) {
      throw std::invalid_argument("invalid spec: cohort");
    }
    const Timestamp from = io::AddMonths(origin, c.from_window * spec.window_months);
    const Timestamp to_end =
        io::AddMonths(origin, (c.from_window + 2) * spec.window_months);
    if (std::max(from, spec.start) >= end ||
        io::AddMonths(origin, (c.from_window + 1) * spec.window_months) >= end ||
        to_end <= spec.start) {
      throw std::invalid_argument("invalid spec: cohort windows outside the period");
    }
    CheckMix(c.before_emotions, "cohort before_emotions");
    CheckMix(c.after_emotions, "cohort after_emotions");
    CheckMix(c.before_opinions, "cohort before_opinions");
    CheckMix(c.after_opinions, "cohort after_opinions");
  }
}

SynthSpec ParseSynthSpec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid spec JSON: ") + e.what());
  }
  SynthSpec s;
  try {
    s.seed = j.value("seed", s.seed);
    if (auto it = j.find("start"); it != j.end()) {
      s.start = it->is_string() ? io::ParseTimestamp(it->get<std::string>())
                                : it->get<Timestamp>();
    }
    s.days = j.value("days", s.days);
    s.base_rate = j.value("base_rate", s.base_rate);
    s.season_profile = j.value("season_profile", s.season_profile);
    for (const json& b : j.value("bursts", json::array())) {
      BurstSpec burst;
      burst.apex = b.at("apex").get<Timestamp>();
      burst.width = b.value("width", burst.width);
      burst.magnitude = b.value("magnitude", burst.magnitude);
      burst.topic = b.value("topic", burst.topic);
      s.bursts.push_back(std::move(burst));
    }
    s.vocabulary = j.value("vocabulary", s.vocabulary);
    s.tokens_per_post = j.value("tokens_per_post", s.tokens_per_post);
    s.background_users = j.value("background_users", s.background_users);
    s.emotion_mix = ReadArray(j, "emotion_mix", s.emotion_mix);
    s.opinion_mix = ReadArray(j, "opinion_mix", s.opinion_mix);
    for (const json& b : j.value("blocks", json::array())) {
      BlockSpec block;
      block.size = b.value("size", block.size);
      block.label = b.value("label", block.label);
      block.emotion_mix = ReadArray(b, "emotion_mix", block.emotion_mix);
      block.opinion_mix = ReadArray(b, "opinion_mix", block.opinion_mix);
      s.blocks.push_back(std::move(block));
    }
    s.p_in = j.value("p_in", s.p_in);
    s.p_out = j.value("p_out", s.p_out);
    s.window_months = j.value("window_months", s.window_months);
    for (const json& c : j.value("cohorts", json::array())) {
      CohortSpec cohort;
      cohort.size = c.value("size", cohort.size);
      cohort.direction = ParseDirection(c.at("direction").get<std::string>());
      cohort.from_window = c.value("from_window", cohort.from_window);
      cohort.posts_per_window = c.value("posts_per_window", cohort.posts_per_window);
      cohort.before_emotions = ReadArray(c, "before_emotions", cohort.before_emotions);
      cohort.after_emotions = ReadArray(c, "after_emotions", cohort.after_emotions);
      cohort.before_opinions = ReadArray(c, "before_opinions", cohort.before_opinions);
      cohort.after_opinions = ReadArray(c, "after_opinions", cohort.after_opinions);
      s.cohorts.push_back(std::move(cohort));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid spec: ") + e.what());
  }
  Validate(s);
  return s;
}

SynthSpec LoadSynthSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read spec " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSynthSpec(buffer.str());
}

trendseg::CountSeries ExpectedCountSeries(const SynthSpec& spec) {
  Validate(spec);
  const std::vector<double> season = SeasonFactors(spec);
  trendseg::CountSeries series;
  series.bin_width = kBinWidth;
  series.start = SeriesStart(spec);
  const std::size_t bins = static_cast<std::size_t>(spec.days) * kSlotsPerDay;
  series.values.resize(bins);
  const double per_bin = spec.base_rate / static_cast<double>(kSlotsPerDay);
  for (std::size_t i = 0; i < bins; ++i) {
    const Timestamp t = series.BinStart(i);
    const std::size_t slot =
        static_cast<std::size_t>((t % kSecondsPerDay + kSecondsPerDay) %
                                 kSecondsPerDay / kBinWidth);
    double mult = 1.0;
    for (double e : BurstExcess(spec, t)) mult += e;
    series.values[i] = per_bin * season[slot] * mult;
  }
  return series;
}

trendseg::CountSeries SampleCountSeries(const SynthSpec& spec) {
  trendseg::CountSeries series = ExpectedCountSeries(spec);
  std::mt19937_64 rng(spec.seed);
  for (double& v : series.values) {
    v = v > 0.0 ? static_cast<double>(std::poisson_distribution<long long>(v)(rng))
                : 0.0;
  }
  return series;
}

SynthOutput Generate(const SynthSpec& spec) {
  Validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SynthOutput out;
  GroundTruth& truth = out.truth;
  truth.origin = io::MonthStart(spec.start);
  truth.window_months = spec.window_months;
  truth.series_start = SeriesStart(spec);
  truth.bin_width = kBinWidth;
  truth.season_factors = SeasonFactors(spec);
  for (const BurstSpec& b : spec.bursts) {
    const Timestamp apex = spec.start + b.apex;
    truth.bursts.push_back(
        {apex, static_cast<std::size_t>((apex - truth.series_start) / kBinWidth),
         b.magnitude, b.topic});
  }

  // Authors of background posts.
  struct Author {
    std::string id;
    const EmotionFractions* emotions;
    const OpinionMix* opinions;
  };
  std::vector<Author> authors;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    PlantedBlock planted;
    planted.label = spec.blocks[b].label;
    planted.emotion_mix = spec.blocks[b].emotion_mix;
    for (std::size_t i = 0; i < spec.blocks[b].size; ++i) {
      const std::string id = "b" + std::to_string(b) + UserName("_u", i);
      planted.members.push_back(id);
      authors.push_back({id, &spec.blocks[b].emotion_mix, &spec.blocks[b].opinion_mix});
    }
    truth.blocks.push_back(std::move(planted));
  }
  if (authors.empty()) {
    for (std::size_t i = 0; i < spec.background_users; ++i) {
      authors.push_back({UserName("u", i), &spec.emotion_mix, &spec.opinion_mix});
    }
  }

  std::uniform_int_distribution<std::size_t> pick_author(0, authors.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_word(0, spec.vocabulary - 1);
  std::uniform_int_distribution<Timestamp> pick_offset(0, kBinWidth - 1);
  auto draw_emotion = [&](const EmotionFractions& mix) {
    std::discrete_distribution<std::size_t> d(mix.begin(), mix.end());
    return kAllEmotions[d(rng)];
  };
  auto draw_opinion = [&](const OpinionMix& mix) {
    std::discrete_distribution<std::size_t> d(mix.begin(), mix.end());
    return kAllOpinions[d(rng)];
  };
  auto background_tokens = [&](std::vector<std::string>& tokens) {
    for (std::size_t t = 0; t < spec.tokens_per_post; ++t) {
      tokens.push_back("w" + std::to_string(pick_word(rng)));
    }
  };

  const std::vector<double> season = truth.season_factors;
  const double per_bin = spec.base_rate / static_cast<double>(kSlotsPerDay);
  const std::size_t bins = static_cast<std::size_t>(spec.days) * kSlotsPerDay;
  const Timestamp period_end = spec.start + spec.days * kSecondsPerDay;
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    const Timestamp bin_start = truth.series_start + static_cast<Timestamp>(i) * kBinWidth;
    const std::size_t slot = static_cast<std::size_t>(
        (bin_start % kSecondsPerDay + kSecondsPerDay) % kSecondsPerDay / kBinWidth);
    const std::vector<double> excess = BurstExcess(spec, bin_start);
    const double base = per_bin * season[slot];
    double mult = 1.0;
    for (double e : excess) mult += e;
    const double lambda = base * mult;
    const long long count =
        lambda > 0.0 ? std::poisson_distribution<long long>(lambda)(rng) : 0;
    for (long long c = 0; c < count; ++c) {
      corpus::PostRecord post;
      post.post_id = "p" + std::to_string(next_id++);
      post.timestamp = std::max(spec.start, bin_start + pick_offset(rng));
      if (post.timestamp >= period_end) post.timestamp = period_end - 1;
      const Author& author = authors[pick_author(rng)];
      post.author_id = author.id;
      post.opinion = draw_opinion(*author.opinions);
      post.emotion = draw_emotion(*author.emotions);
      // Share of this bin's intensity owed to each burst decides whether the
      // post carries that burst's topic.
      double r = unit(rng) * mult;
      for (std::size_t b = 0; b < excess.size(); ++b) {
        if (r < excess[b]) {
          post.tokens = spec.bursts[b].topic;
          break;
        }
        r -= excess[b];
      }
      background_tokens(post.tokens);
      out.corpus.posts.push_back(std::move(post));
    }
  }

  // Reposts per analysis window among block members.
  std::vector<std::pair<std::size_t, std::size_t>> members;  // (block, index)
  std::vector<const std::string*> member_ids;
  for (std::size_t b = 0; b < truth.blocks.size(); ++b) {
    for (const std::string& id : truth.blocks[b].members) {
      members.emplace_back(b, members.size());
      member_ids.push_back(&id);
    }
  }
  for (int w = 0;; ++w) {
    const Timestamp ws = std::max(
        spec.start, io::AddMonths(truth.origin, w * spec.window_months));
    const Timestamp we = std::min(
        period_end, io::AddMonths(truth.origin, (w + 1) * spec.window_months));
    if (ws >= period_end) break;
    if (we <= ws) continue;
    std::uniform_int_distribution<Timestamp> pick_ts(ws, we - 1);
    for (std::size_t u = 0; u < members.size(); ++u) {
      for (std::size_t v = u + 1; v < members.size(); ++v) {
        const double p = members[u].first == members[v].first ? spec.p_in : spec.p_out;
        if (unit(rng) >= p) continue;
        const bool forward = unit(rng) < 0.5;
        corpus::RepostRecord r;
        r.reposter_id = *member_ids[forward ? u : v];
        r.original_author_id = *member_ids[forward ? v : u];
        r.timestamp = pick_ts(rng);
        out.corpus.reposts.push_back(std::move(r));
      }
    }
  }

  // Cohort users post only in their two windows.
  for (std::size_t c = 0; c < spec.cohorts.size(); ++c) {
    const CohortSpec& cs = spec.cohorts[c];
    PlantedCohort planted;
    planted.direction = cs.direction;
    planted.from_window = cs.from_window;
    planted.to_window = cs.from_window + 1;
    planted.before_emotions = cs.before_emotions;
    planted.after_emotions = cs.after_emotions;
    for (std::size_t i = 0; i < cs.size; ++i) {
      const std::string id = "c" + std::to_string(c) + UserName("_u", i);
      planted.members.push_back(id);
      for (int half = 0; half < 2; ++half) {
        const int w = cs.from_window + half;
        const Timestamp ws =
            std::max(spec.start, io::AddMonths(truth.origin, w * spec.window_months));
        const Timestamp we = std::min(
            period_end, io::AddMonths(truth.origin, (w + 1) * spec.window_months));
        std::uniform_int_distribution<Timestamp> pick_ts(ws, we - 1);
        const std::array<int, 3> opinions = ApportionOpinions(
            half == 0 ? cs.before_opinions : cs.after_opinions, cs.posts_per_window);
        const EmotionFractions& emotions =
            half == 0 ? cs.before_emotions : cs.after_emotions;
        for (std::size_t o = 0; o < 3; ++o) {
          for (int k = 0; k < opinions[o]; ++k) {
            corpus::PostRecord post;
            post.post_id = "p" + std::to_string(next_id++);
            post.author_id = id;
            post.timestamp = pick_ts(rng);
            post.opinion = kAllOpinions[o];
            post.emotion = draw_emotion(emotions);
            background_tokens(post.tokens);
            out.corpus.posts.push_back(std::move(post));
          }
        }
      }
    }
    truth.cohorts.push_back(std::move(planted));
  }
  return out;
}

void WriteSynthOutput(const SynthOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  corpus::WritePosts(output.corpus.posts, dir / "posts.jsonl");
  corpus::WriteReposts(output.corpus.reposts, dir / "reposts.jsonl");

  const GroundTruth& t = output.truth;
  json j;
  j["origin"] = t.origin;
  j["window_months"] = t.window_months;
  j["series_start"] = t.series_start;
  j["bin_width"] = t.bin_width;
  j["season_factors"] = t.season_factors;
  j["bursts"] = json::array();
  for (const PlantedBurst& b : t.bursts) {
    j["bursts"].push_back({{"apex", b.apex},
                           {"apex_bin", b.apex_bin},
                           {"magnitude", b.magnitude},
                           {"topic", b.topic}});
  }
  j["blocks"] = json::array();
  for (const PlantedBlock& b : t.blocks) {
    j["blocks"].push_back({{"label", b.label},
                           {"members", b.members},
                           {"emotion_mix", MixJson(b.emotion_mix)}});
  }
  j["cohorts"] = json::array();
  for (const PlantedCohort& c : t.cohorts) {
    j["cohorts"].push_back({{"direction", std::string(opinion::ToString(c.direction))},
                            {"from_window", c.from_window},
                            {"to_window", c.to_window},
                            {"members", c.members},
                            {"before_emotions", MixJson(c.before_emotions)},
                            {"after_emotions", MixJson(c.after_emotions)}});
  }
  std::ofstream out(dir / "ground_truth.json", std::ios::binary);
  if (!out) throw DataError("cannot write ground truth under " + dir.string());
  out << j.dump(2) << '\n';
}

PlantedGraph PlantedPartitionGraph(std::size_t num_blocks,
                                   std::size_t block_size, double p_in,
                                   double p_out, std::uint64_t seed) {
  const std::size_t n = num_blocks * block_size;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PlantedGraph out;
  out.blocks.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.blocks[i] = static_cast<int>(i / block_size);
  community::WeightedGraph::Builder builder(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = out.blocks[u] == out.blocks[v] ? p_in : p_out;
      if (unit(rng) < p) {
        builder.AddEdge(static_cast<community::NodeId>(u),
                        static_cast<community::NodeId>(v), 1.0);
      }
    }
  }
  out.graph = std::move(builder).Build();
  return out;
}

}  // namespace discourse::synthkit
