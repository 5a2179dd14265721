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

#include "discourse/stats.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace discourse::stats {

namespace {

constexpr int kMaxFractionTerms = 500;
constexpr double kFractionEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), modified Lentz evaluation.
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kFractionEpsilon) break;
  }
  return h;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument("incomplete beta needs a, b > 0, 0 <= x <= 1");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast for x < (a + 1) / (a + b + 2); use the
  // symmetry I_x(a, b) = 1 - I_{1-x}(b, a) on the other side.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTCdf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * RegularizedIncompleteBeta(df / 2.0, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

TTestResult TwoSampleTTest(std::span<const double> group_a,
                           std::span<const double> group_b) {
  const std::size_t n1 = group_a.size();
  const std::size_t n2 = group_b.size();
  if (n1 < 2 || n2 < 2) {
    throw std::invalid_argument("each group needs at least two values");
  }
  auto mean_of = [](std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };
  auto ss_of = [](std::span<const double> xs, double mean) {
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return s;
  };
  TTestResult r;
  r.mean_a = mean_of(group_a);
  r.mean_b = mean_of(group_b);
  r.df = static_cast<int>(n1 + n2 - 2);
  const double pooled_var =
      (ss_of(group_a, r.mean_a) + ss_of(group_b, r.mean_b)) / r.df;
  const double diff = r.mean_a - r.mean_b;
  if (pooled_var == 0.0) {
    r.degenerate = true;
    if (diff == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
      r.d = 0.0;
    } else {
      const double inf = std::numeric_limits<double>::infinity();
      r.t = diff > 0 ? inf : -inf;
      r.d = r.t;
      r.p = 0.0;
    }
    return r;
  }
  const double sd = std::sqrt(pooled_var);
  const double se = sd * std::sqrt(1.0 / n1 + 1.0 / n2);
  r.t = diff / se;
  r.d = diff / sd;
  const double x = r.df / (r.df + r.t * r.t);
  r.p = std::min(1.0, RegularizedIncompleteBeta(r.df / 2.0, 0.5, x));
  return r;
}

std::string_view SignificanceStars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace discourse::stats
