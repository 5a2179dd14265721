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
#include <random>
#include <vector>

#include "boost/math/distributions/students_t.hpp"
#include "boost/math/special_functions/beta.hpp"
#include "gtest/gtest.h"

namespace discourse::stats {
namespace {

// Textbook pooled t statistic and a Boost-backed two-sided p-value.
struct Reference {
  double t;
  double p;
  double d;
};

Reference ReferenceTTest(const std::vector<double>& a, const std::vector<double>& b) {
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  double m1 = 0.0, m2 = 0.0;
  for (double x : a) m1 += x;
  for (double x : b) m2 += x;
  m1 /= n1;
  m2 /= n2;
  double v1 = 0.0, v2 = 0.0;
  for (double x : a) v1 += (x - m1) * (x - m1);
  for (double x : b) v2 += (x - m2) * (x - m2);
  v1 /= n1 - 1.0;
  v2 /= n2 - 1.0;
  const double df = n1 + n2 - 2.0;
  const double sp = std::sqrt(((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / df);
  const double t = (m1 - m2) / (sp * std::sqrt(1.0 / n1 + 1.0 / n2));
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return {t, p, (m1 - m2) / sp};
}

TEST(TwoSampleTTestTest, HandExample) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {4, 5, 6};
  const TTestResult r = TwoSampleTTest(a, b);
  EXPECT_EQ(r.df, 4);
  EXPECT_NEAR(r.t, -3.0 / std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.t, -3.674, 5e-4);
  EXPECT_NEAR(r.p, 0.0213, 5e-4);
  EXPECT_DOUBLE_EQ(r.d, -3.0);
  EXPECT_DOUBLE_EQ(r.mean_a, 2.0);
  EXPECT_DOUBLE_EQ(r.mean_b, 5.0);
  EXPECT_FALSE(r.degenerate);
}

TEST(TwoSampleTTestTest, IdenticalGroups) {
  const std::vector<double> a = {1, 2, 3, 4};
  const TTestResult r = TwoSampleTTest(a, a);
  EXPECT_DOUBLE_EQ(r.t, 0.0);
  EXPECT_DOUBLE_EQ(r.p, 1.0);
  EXPECT_DOUBLE_EQ(r.d, 0.0);
}

TEST(TwoSampleTTestTest, DegreesOfFreedom) {
  std::vector<double> a(12), b(7);
  for (int i = 0; i < 12; ++i) a[i] = i * 0.3;
  for (int i = 0; i < 7; ++i) b[i] = i * 0.5 + 1;
  EXPECT_EQ(TwoSampleTTest(a, b).df, 17);
}

TEST(TwoSampleTTestTest, ConstantGroups) {
  const std::vector<double> a = {2, 2};
  const std::vector<double> b = {2, 2, 2};
  const std::vector<double> c = {1, 1};
  const TTestResult same = TwoSampleTTest(a, b);
  EXPECT_TRUE(same.degenerate);
  EXPECT_DOUBLE_EQ(same.p, 1.0);
  const TTestResult apart = TwoSampleTTest(a, c);
  EXPECT_TRUE(apart.degenerate);
  EXPECT_TRUE(std::isinf(apart.t) && apart.t > 0);
  EXPECT_DOUBLE_EQ(apart.p, 0.0);
}

TEST(TwoSampleTTestTest, RejectsTinyGroups) {
  const std::vector<double> one = {1};
  const std::vector<double> two = {1, 2};
  EXPECT_THROW(TwoSampleTTest(one, two), std::invalid_argument);
  EXPECT_THROW(TwoSampleTTest(two, one), std::invalid_argument);
}

TEST(TwoSampleTTestTest, SwappingGroupsNegatesT) {
  const std::vector<double> a = {0.1, 0.4, 0.35, 0.8};
  const std::vector<double> b = {0.5, 0.9, 0.7};
  const TTestResult ab = TwoSampleTTest(a, b);
  const TTestResult ba = TwoSampleTTest(b, a);
  EXPECT_DOUBLE_EQ(ab.t, -ba.t);
  EXPECT_DOUBLE_EQ(ab.p, ba.p);
}

TEST(TwoSampleTTestTest, ShiftAndScaleInvariance) {
  const std::vector<double> a = {0.1, 0.4, 0.35, 0.8, 0.2};
  const std::vector<double> b = {0.5, 0.9, 0.7};
  std::vector<double> a2, b2;
  for (double x : a) a2.push_back(3.0 * x + 7.0);
  for (double x : b) b2.push_back(3.0 * x + 7.0);
  EXPECT_NEAR(TwoSampleTTest(a, b).t, TwoSampleTTest(a2, b2).t, 1e-9);
}

TEST(TwoSampleTTestTest, MatchesReferenceOnRandomInputs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 30);
  std::normal_distribution<double> value(0.0, 1.0);
  std::uniform_real_distribution<double> offset(-1.5, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(size(rng)), b(size(rng));
    const double shift = offset(rng);
    for (double& x : a) x = value(rng);
    for (double& x : b) x = value(rng) + shift;
    const TTestResult r = TwoSampleTTest(a, b);
    const Reference ref = ReferenceTTest(a, b);
    EXPECT_NEAR(r.t, ref.t, 1e-9 * std::max(1.0, std::fabs(ref.t)));
    EXPECT_NEAR(r.p, ref.p, 1e-9);
    EXPECT_NEAR(r.d, ref.d, 1e-9 * std::max(1.0, std::fabs(ref.d)));
    EXPECT_EQ(r.df, static_cast<int>(a.size() + b.size()) - 2);
  }
}

TEST(RegularizedIncompleteBetaTest, MatchesBoost) {
  for (double a : {0.5, 1.0, 2.5, 10.0, 40.0}) {
    for (double b : {0.5, 1.0, 3.0, 17.0}) {
      for (double x : {0.001, 0.1, 0.37, 0.5, 0.8, 0.999}) {
        EXPECT_NEAR(RegularizedIncompleteBeta(a, b, x), boost::math::ibeta(a, b, x), 1e-12)
            << a << " " << b << " " << x;
      }
    }
  }
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 0.0), 0.0);
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 1.0), 1.0);
  EXPECT_THROW(RegularizedIncompleteBeta(0, 3, 0.5), std::invalid_argument);
}

TEST(StudentTCdfTest, MatchesBoost) {
  for (double df : {1.0, 2.0, 5.0, 17.0, 120.0}) {
    const boost::math::students_t dist(df);
    for (double t : {-6.0, -2.0, -0.3, 0.0, 0.7, 2.1, 9.0}) {
      EXPECT_NEAR(StudentTCdf(t, df), boost::math::cdf(dist, t), 1e-12);
    }
  }
}

TEST(SignificanceStarsTest, Thresholds) {
  EXPECT_EQ(SignificanceStars(0.0005), "***");
  EXPECT_EQ(SignificanceStars(0.001), "**");
  EXPECT_EQ(SignificanceStars(0.009), "**");
  EXPECT_EQ(SignificanceStars(0.04), "*");
  EXPECT_EQ(SignificanceStars(0.05), "");
}

}  // namespace
}  // namespace discourse::stats
