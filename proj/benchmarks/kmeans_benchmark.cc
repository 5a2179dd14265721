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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "discourse/kmeans.h"

namespace discourse::emotion {
namespace {

std::vector<Point> Points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> points(n, Point(14));
  for (Point& p : points) {
    for (double& x : p) x = unit(rng);
  }
  return points;
}

void BM_KMeans(benchmark::State& state) {
  const std::vector<Point> points = Points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(KMeans(points, 5, 1));
  }
}
BENCHMARK(BM_KMeans)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FitRange(benchmark::State& state) {
  const std::vector<Point> points = Points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitRange(points, 1, 15, 1));
  }
}
BENCHMARK(BM_FitRange)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace discourse::emotion
