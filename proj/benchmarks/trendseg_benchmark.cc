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

#include "benchmark/benchmark.h"
#include "discourse/synthkit.h"
#include "discourse/trendseg.h"

namespace discourse::trendseg {
namespace {

CountSeries Series(int days) {
  synthkit::SynthSpec spec;
  spec.days = days;
  spec.base_rate = 20000;
  for (int d = 1; d < days; d += 7) {
    spec.bursts.push_back({d * kSecondsPerDay + 36000, 7200, 6.0, {}});
  }
  return synthkit::SampleCountSeries(spec);
}

void BM_SeasonProfile(benchmark::State& state) {
  const CountSeries series = Series(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Deseasonalize(series, ComputeSeasonProfile(series)));
  }
  state.SetItemsProcessed(state.iterations() * series.values.size());
}
BENCHMARK(BM_SeasonProfile)->Arg(30)->Arg(365);

void BM_SegmentTrends(benchmark::State& state) {
  const CountSeries series = Series(static_cast<int>(state.range(0)));
  SegmenterConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SegmentTrends(series.values, config));
  }
  state.SetItemsProcessed(state.iterations() * series.values.size());
}
BENCHMARK(BM_SegmentTrends)->Arg(30)->Arg(365);

}  // namespace
}  // namespace discourse::trendseg
