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

#include "discourse/kmeans.h"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace discourse::emotion {

namespace {

double SquaredDistance(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] - b[i];
    d += x * x;
  }
  return d;
}

void CheckPoints(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("no points to cluster");
  for (const Point& p : points) {
    if (p.size() != points.front().size()) {
      throw std::invalid_argument("points differ in dimension");
    }
  }
}

std::vector<Point> SeedPlusPlus(std::span<const Point> points, int k,
                                std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<Point> centers;
  std::vector<bool> chosen(n, false);
  std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  centers.push_back(points[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = SquaredDistance(points[i], points[first]);

  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += chosen[i] ? 0.0 : d2[i];
    std::size_t pick = n;
    if (total > 0.0) {
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || d2[i] <= 0.0) continue;
        pick = i;
        r -= d2[i];
        if (r < 0.0) break;
      }
    } else {
      // Every remaining point coincides with a center.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[std::uniform_int_distribution<std::size_t>(
          0, free.size() - 1)(rng)];
    }
    chosen[pick] = true;
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], SquaredDistance(points[i], points[pick]));
    }
  }
  return centers;
}

}  // namespace

ClusteringResult Lloyd(std::span<const Point> points,
                       std::vector<Point> centroids, int max_iterations) {
  CheckPoints(points);
  const std::size_t n = points.size();
  const std::size_t k = centroids.size();
  const std::size_t dim = points.front().size();
  ClusteringResult result;
  result.k = static_cast<int>(k);
  result.assignments.assign(n, -1);

  std::vector<double> dist(n, 0.0);
  std::vector<std::size_t> sizes(k);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int current = result.assignments[i];
      int best = current;
      double best_d = current >= 0 ? SquaredDistance(points[i], centroids[current])
                                   : std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = SquaredDistance(points[i], centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      if (best != current) changed = true;
      result.assignments[i] = best;
      dist[i] = best_d;
    }
    if (!changed) break;

    std::fill(sizes.begin(), sizes.end(), 0);
    for (int a : result.assignments) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[result.assignments[i]] < 2) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      --sizes[result.assignments[far]];
      result.assignments[far] = static_cast<int>(c);
      sizes[c] = 1;
      dist[far] = 0.0;
    }

    for (Point& c : centroids) std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      Point& c = centroids[result.assignments[i]];
      for (std::size_t j = 0; j < dim; ++j) c[j] += points[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (double& x : centroids[c]) x /= static_cast<double>(sizes[c]);
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      inertia += SquaredDistance(points[i], centroids[result.assignments[i]]);
    }
    result.inertia_history.push_back(inertia);
    result.iterations = iter + 1;
  }
  result.centroids = std::move(centroids);
  result.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    result.inertia +=
        SquaredDistance(points[i], result.centroids[result.assignments[i]]);
  }
  return result;
}

ClusteringResult KMeans(std::span<const Point> points, int k,
                        std::uint64_t seed, const KMeansOptions& options) {
  CheckPoints(points);
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw std::invalid_argument("k must lie in [1, number of points]");
  }
  ClusteringResult best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
    ClusteringResult run =
        Lloyd(points, SeedPlusPlus(points, k, rng), options.max_iterations);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

std::map<int, ClusteringResult> FitRange(std::span<const Point> points,
                                         int k_min, int k_max,
                                         std::uint64_t seed,
                                         const KMeansOptions& options) {
  if (k_min < 1 || k_max < k_min ||
      static_cast<std::size_t>(k_max) > points.size()) {
    throw std::invalid_argument("invalid k range");
  }
  std::map<int, ClusteringResult> fits;
  for (int k = k_min; k <= k_max; ++k) {
    ClusteringResult fit = KMeans(points, k, seed, options);
    if (k > k_min) {
      const ClusteringResult& prev = fits.at(k - 1);
      std::size_t worst = 0;
      double worst_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d =
            SquaredDistance(points[i], prev.centroids[prev.assignments[i]]);
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      std::vector<Point> start = prev.centroids;
      start.push_back(points[worst]);
      ClusteringResult warm =
          Lloyd(points, std::move(start), options.max_iterations);
      if (warm.inertia < fit.inertia) fit = std::move(warm);
    }
    fits.emplace(k, std::move(fit));
  }
  return fits;
}

ElbowChoice SelectKElbow(const std::map<int, double>& inertia_by_k,
                         int min_k) {
  if (inertia_by_k.size() < 3) {
    throw std::invalid_argument("elbow selection needs at least three k values");
  }
  int expected = inertia_by_k.begin()->first;
  for (const auto& [k, inertia] : inertia_by_k) {
    if (k != expected++) throw std::invalid_argument("k values must be consecutive");
    if (inertia < 0.0) throw std::invalid_argument("negative inertia");
  }

  ElbowChoice choice;
  for (auto it = std::next(inertia_by_k.begin()); it != inertia_by_k.end();
       ++it) {
    const double before = std::prev(it)->second;
    choice.relative_drop[it->first] =
        before > 0.0 ? (before - it->second) / before : 0.0;
  }
  const auto& d = choice.relative_drop;
  for (auto it = std::next(d.begin()); std::next(it) != d.end(); ++it) {
    if (it->first <= min_k) continue;
    if (it->second > std::prev(it)->second && it->second > std::next(it)->second) {
      choice.k = it->first;
      return choice;
    }
  }
  choice.k = inertia_by_k.rbegin()->first;
  choice.fallback = true;
  return choice;
}

}  // namespace discourse::emotion
