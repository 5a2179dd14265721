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

#ifndef DISCOURSE_STATS_H_
#define DISCOURSE_STATS_H_

#include <span>
#include <string>
#include <string_view>

namespace discourse::stats {

struct TTestResult {
  std::string label;
  double t = 0.0;
  int df = 0;
  double p = 1.0;  // two-sided
  double d = 0.0;  // Cohen's d on the pooled standard deviation
  double mean_a = 0.0;
  double mean_b = 0.0;
  // Both groups had zero variance; t, p and d are conventions, not estimates.
  bool degenerate = false;
};

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(T <= t) for Student's t with `df` degrees of freedom.
double StudentTCdf(double t, double df);

// Pooled-variance two-sample t-test of A against B. Needs at least two values
// per group (std::invalid_argument otherwise). With zero variance in both
// groups, equal means give t = 0, p = 1, d = 0 and unequal means give
// infinite t and d with p = 0; both are flagged degenerate.
TTestResult TwoSampleTTest(std::span<const double> group_a,
                           std::span<const double> group_b);

// "*", "**", "***" for p below .05, .01, .001; empty otherwise.
std::string_view SignificanceStars(double p);

}  // namespace discourse::stats

#endif  // DISCOURSE_STATS_H_
