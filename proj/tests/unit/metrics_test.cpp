// Copyright 2026 The PuriGAN Authors. All Rights Reserved.
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

#include "purigan/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "purigan/errors.hpp"
#include "test_support.hpp"

namespace purigan {
namespace {

Points Gaussian(Rng& rng, Eigen::Index n, const Eigen::VectorXd& mean, double sd) {
  std::normal_distribution<double> z(0.0, 1.0);
  Points p(n, mean.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < mean.size(); ++j) p(i, j) = mean(j) + sd * z(rng);
  }
  return p;
}

using U8 = std::vector<std::uint8_t>;

TEST(Frechet, SameSamplesIsZero) {
  Rng rng(51);
  const Points a = Gaussian(rng, 500, Eigen::Vector3d(1, -2, 0.5), 1.3);
  EXPECT_NEAR(frechet_gaussian(a, a), 0.0, 1e-10);
}

TEST(Frechet, MeanShiftIn1d) {
  Rng rng(52);
  const Points a = Gaussian(rng, 20000, Eigen::VectorXd::Zero(1), 1.0);
  const Points b = Gaussian(rng, 20000, Eigen::VectorXd::Ones(1), 1.0);
  EXPECT_NEAR(frechet_gaussian(a, b), 1.0, 0.05);
}

TEST(Frechet, ClosedFormScaleChange) {
  // Tr(I + 4I - 2 * 2I) = 2 for N(0, I) vs N(0, 4I) in 2-D.
  GaussianSummary a{Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity(), 100};
  GaussianSummary b{Eigen::Vector2d::Zero(), 4.0 * Eigen::Matrix2d::Identity(), 100};
  EXPECT_NEAR(frechet_gaussian(a, b), 2.0, 1e-12);

  Rng rng(53);
  const Points x = Gaussian(rng, 20000, Eigen::Vector2d::Zero(), 1.0);
  const Points y = Gaussian(rng, 20000, Eigen::Vector2d::Zero(), 2.0);
  EXPECT_NEAR(frechet_gaussian(x, y), 2.0, 0.1);
}

TEST(Frechet, MatchesCommutingClosedForm) {
  // Diagonal covariances commute, so the trace term is sum (sqrt(a_i) - sqrt(b_i))^2.
  GaussianSummary a{Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1, 4, 9).asDiagonal(), 10};
  GaussianSummary b{Eigen::Vector3d(0, 2, 5), Eigen::Vector3d(4, 1, 9).asDiagonal(), 10};
  const double expect = 1 + 0 + 4 + (1 - 2) * (1 - 2) + (2 - 1) * (2 - 1) + 0;
  EXPECT_NEAR(frechet_gaussian(a, b), expect, 1e-12);
}

TEST(Frechet, SymmetricAndNonNegative) {
  Rng rng(54);
  for (int i = 0; i < 50; ++i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::NullaryExpr(
        3, 3, [&] { return std::normal_distribution<double>()(rng); });
    const Points a = Gaussian(rng, 200, Eigen::Vector3d::Zero(), 1.0) * m;
    const Points b = Gaussian(rng, 150, Eigen::Vector3d(0.5, 0, 1), 0.7);
    const double ab = frechet_gaussian(a, b), ba = frechet_gaussian(b, a);
    EXPECT_NEAR(ab, ba, 1e-10 * std::max(1.0, ab));
    EXPECT_GE(ab, 0.0);
  }
}

TEST(Frechet, NeedsEnoughRows) {
  EXPECT_THROW(frechet_gaussian(Points::Zero(2, 2), Points::Zero(5, 2)), ArgumentError);
  EXPECT_THROW(frechet_gaussian(Points::Zero(5, 3), Points::Zero(5, 2)), ShapeError);
}

TEST(Mmd, SameDistributionNearZero) {
  Rng rng(55);
  const Points a = Gaussian(rng, 1000, Eigen::Vector2d::Zero(), 1.0);
  // Same sample set on both sides: the unbiased estimate is
  // -2 (1 - mean off-diagonal kernel) / (n - 1), about -8e-4 here.
  EXPECT_LE(std::abs(mmd_rbf(a, a, median_bandwidth(a, a))), 1e-3);
  // Independent draws: null standard deviation is of order 1e-3 at n = 1000.
  const Points b = Gaussian(rng, 1000, Eigen::Vector2d::Zero(), 1.0);
  EXPECT_LE(std::abs(mmd_rbf(a, b, median_bandwidth(a, b))), 5e-3);
}

TEST(Mmd, SeparatedPointMasses) {
  Points a(2, 1), b(2, 1);
  a << 0, 0;
  b << 10, 10;
  // Unbiased: within-set pairs contribute 1 each, cross pairs exp(-50).
  const double oracle = 1.0 + 1.0 - 2.0 * std::exp(-50.0);
  EXPECT_NEAR(mmd_rbf(a, b, 1.0), oracle, 1e-12);
  EXPECT_NEAR(mmd_rbf(a, b, 1.0), 2.0, 1e-3);
}

TEST(Mmd, WideBandwidthVanishes) {
  Rng rng(56);
  const Points a = Gaussian(rng, 200, Eigen::Vector2d::Zero(), 1.0);
  const Points b = Gaussian(rng, 200, Eigen::Vector2d(3, 0), 1.0);
  const double narrow = mmd_rbf(a, b, 1.0);
  const double wide = mmd_rbf(a, b, 1e4);
  EXPECT_GT(narrow, 0.3);
  EXPECT_LT(std::abs(wide), 1e-6);
}

TEST(Mmd, RejectsBadInput) {
  EXPECT_THROW(mmd_rbf(Points::Zero(1, 2), Points::Zero(4, 2), 1.0), ArgumentError);
  EXPECT_THROW(mmd_rbf(Points::Zero(3, 2), Points::Zero(4, 2), 0.0), ArgumentError);
}

TEST(MedianBandwidth, KnownPairs) {
  Points a(2, 1), b(1, 1);
  a << 0, 1;
  b << 3;
  // Pairwise distances of {0, 1, 3}: 1, 3, 2 -> median 2.
  EXPECT_DOUBLE_EQ(median_bandwidth(a, b), 2.0);
}

TEST(Tv, Examples) {
  const TabularDistribution p({0.7, 0.3});
  EXPECT_DOUBLE_EQ(tv_tabular(p, p), 0.0);
  EXPECT_DOUBLE_EQ(tv_tabular(TabularDistribution({1, 0}), TabularDistribution({0, 1})), 1.0);
  EXPECT_NEAR(tv_tabular(p, TabularDistribution({0.5, 0.5})), 0.2, 1e-15);
  EXPECT_THROW(tv_tabular(p, TabularDistribution({1, 0, 0})), ShapeError);
}

TEST(Tv, TriangleInequality) {
  Rng rng(57);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng() % 10;
    const auto p = testing::random_tabular(k, rng), q = testing::random_tabular(k, rng),
               r = testing::random_tabular(k, rng);
    EXPECT_LE(tv_tabular(p, r), tv_tabular(p, q) + tv_tabular(q, r) + 1e-12);
    EXPECT_LE(tv_tabular(p, q), 1.0);
  }
}

TEST(Auroc, Examples) {
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.9, 0.8, 0.3, 0.1}, U8{1, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.9, 0.6, 0.6, 0.1}, U8{1, 1, 0, 0}), 0.875);
  EXPECT_THROW(auroc(std::vector<double>{1, 1}, U8{1, 1}), ArgumentError);
  EXPECT_THROW(auroc(std::vector<double>{1, 1}, U8{1}), ShapeError);
}

double PairwiseAuroc(const std::vector<double>& s, const U8& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[i] == 1 && y[j] == 0) {
        num += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
        den += 1.0;
      }
    }
  }
  return num / den;
}

TEST(Auroc, MatchesPairwiseCountingWithTies) {
  Rng rng(58);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<double> s(n);
    U8 y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 7);
      y[i] = static_cast<std::uint8_t>(i < 1 ? 1 : i < 2 ? 0 : rng() % 2);
    }
    EXPECT_NEAR(auroc(s, y), PairwiseAuroc(s, y), 1e-12);
  }
}

TEST(Auroc, RandomLabelsNearHalf) {
  Rng rng(59);
  std::vector<double> s(10000);
  U8 y(10000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = std::uniform_real_distribution<double>()(rng);
    y[i] = static_cast<std::uint8_t>(rng() % 2);
  }
  EXPECT_NEAR(auroc(s, y), 0.5, 0.02);
}

TEST(Auroc, InvariantUnderExp) {
  Rng rng(60);
  std::vector<double> s(300), e(300);
  U8 y(300);
  std::normal_distribution<double> n(0.0, 2.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    y[i] = static_cast<std::uint8_t>(i % 3 == 0);
    s[i] = n(rng) + (y[i] ? 1.0 : 0.0);
    e[i] = std::exp(s[i]);
  }
  EXPECT_EQ(auroc(s, y), auroc(e, y));
}

TEST(F1, Examples) {
  auto r = f1_accuracy(U8{1, 0, 1}, U8{1, 0, 1});
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  // TP=2, FP=1, FN=1, TN=0.
  r = f1_accuracy(U8{1, 1, 1, 0}, U8{1, 1, 0, 1});
  EXPECT_NEAR(r.precision, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.recall, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.f1, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.5);
  r = f1_accuracy(U8{0, 0, 0}, U8{1, 0, 1});
  EXPECT_DOUBLE_EQ(r.f1, 0.0);
  EXPECT_THROW(f1_accuracy(U8{1}, U8{1, 0}), ShapeError);
}

}  // namespace
}  // namespace purigan
