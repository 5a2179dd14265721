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

#ifndef DISCOURSE_KMEANS_H_
#define DISCOURSE_KMEANS_H_

// K-means with k-means++ seeding and restarts, inertia curves over a range of
// k, and elbow selection on the relative inertia improvement.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace discourse::emotion {

using Point = std::vector<double>;

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

struct ClusteringResult {
  int k = 0;
  std::vector<int> assignments;
  std::vector<Point> centroids;
  // Sum of squared Euclidean distances to the assigned centroid.
  double inertia = 0.0;
  // Inertia after each assignment+update round of the winning run.
  std::vector<double> inertia_history;
  int iterations = 0;
};

// Lloyd iterations from the given centroids until the assignment stops
// changing or max_iterations rounds ran. A cluster left empty takes the
// point farthest from its centroid.
ClusteringResult Lloyd(std::span<const Point> points, std::vector<Point> centroids,
                       int max_iterations);

// Best of `restarts` k-means++ runs; restart r draws from seed + r. Throws
// std::invalid_argument unless 1 <= k <= points.size().
ClusteringResult KMeans(std::span<const Point> points, int k, std::uint64_t seed,
                        const KMeansOptions& options = {});

// Fits every k in [k_min, k_max]. Each k also tries the (k-1) solution plus
// its worst-fit point as a starting layout, so inertia never increases in k.
std::map<int, ClusteringResult> FitRange(std::span<const Point> points,
                                         int k_min, int k_max,
                                         std::uint64_t seed,
                                         const KMeansOptions& options = {});

struct ElbowChoice {
  int k = 0;
  // No interior turning point was found; k is the largest k offered.
  bool fallback = false;
  // (I(k-1) - I(k)) / I(k-1) for every k whose predecessor is present.
  std::map<int, double> relative_drop;
};

// Picks the smallest k > min_k at which the relative improvement
// (I(k-1) - I(k)) / I(k-1) peaks, i.e. the local minimum of the signed
// percentage change in inertia, the last k before improvements collapse.
// Throws std::invalid_argument for fewer than three consecutive k values.
ElbowChoice SelectKElbow(const std::map<int, double>& inertia_by_k, int min_k);

}  // namespace discourse::emotion

#endif  // DISCOURSE_KMEANS_H_
