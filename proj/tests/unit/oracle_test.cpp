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

#include "purigan/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "purigan/errors.hpp"
#include "test_support.hpp"

namespace purigan {
namespace {

using testing::as_vector;
using testing::v_oracle;

double Phi(double x, double c) { return (x - c) * (x - c); }

ObjectiveConfig ThreeLevel(double pi, double c = 0.5) {
  return {Variant::kThreeLevel, 1.0, c, {}, pi};
}
ObjectiveConfig TwoLevel(double pi, double lambda, double c = 0.5) {
  return {Variant::kTwoLevel, lambda, c, {}, pi};
}

TEST(VOfG, MatchesIndependentOracle) {
  Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 2 + rng() % 6;
    const auto pp = testing::random_tabular(k, rng), pm = testing::random_tabular(k, rng),
               pg = testing::random_tabular(k, rng);
    const double pi = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    EXPECT_NEAR(v_of_g(pg, pp, pm, ThreeLevel(pi, 0.4)),
                v_oracle(as_vector(pg), as_vector(pp), as_vector(pm), pi, 0.4, true,
                         theorem2_d(pi)),
                1e-13);
    EXPECT_NEAR(v_of_g(pg, pp, pm, TwoLevel(pi, 3.0, 0.6)),
                v_oracle(as_vector(pg), as_vector(pp), as_vector(pm), pi, 0.6, false, 3.0),
                1e-13);
  }
}

TEST(VOfG, ThreeLevelMinimumValueAtTarget) {
  Rng rng(42);
  for (double pi : {0.2, 0.5, 0.8}) {
    for (double c : {0.1, 0.5, 0.9}) {
      const auto pp = testing::random_tabular(5, rng), pm = testing::random_tabular(5, rng);
      EXPECT_NEAR(v_of_g(pp, pp, pm, ThreeLevel(pi, c)), 3.0 * Phi(pi / (pi + 1.0), c), 1e-12);
    }
  }
  const TabularDistribution pp({0.7, 0.3}), pm({0.2, 0.8});
  EXPECT_NEAR(v_of_g(pp, pp, pm, ThreeLevel(0.5)), 1.0 / 12.0, 1e-12);
}

TEST(VOfG, TwoLevelDisjointLargeLambdaAtTarget) {
  const TabularDistribution pp({0.6, 0.4, 0.0, 0.0}), pm({0.0, 0.0, 0.3, 0.7});
  const double c = 0.5;
  for (double pi : {0.5, 0.7}) {
    const double expect = (1 + pi) * Phi(pi / (1 + pi), c) + c * c * (2 - pi);
    EXPECT_NEAR(v_of_g(pp, pp, pm, TwoLevel(pi, 1e6)), expect, 1e-6);
  }
  // At finite lambda the S2 output is (1-pi)/(1-pi+lambda), not 0, which
  // shifts V by about 2c (1-pi)(2-pi)/lambda: 1.19e-6 at pi = 0.3.
  for (double pi : {0.1, 0.3, 0.5, 0.7}) {
    EXPECT_NEAR(v_of_g(pp, pp, pm, TwoLevel(pi, 1e6)),
                v_oracle(as_vector(pp), as_vector(pp), as_vector(pm), pi, c, false, 1e6), 1e-14);
    const double limit = (1 + pi) * Phi(pi / (1 + pi), c) + c * c * (2 - pi);
    EXPECT_NEAR(v_of_g(pp, pp, pm, TwoLevel(pi, 1e6)), limit, 2.0 * c * (1 - pi) * (2 - pi) * 1e-6 * 1.01);
  }
}

TEST(VOfG, Errors) {
  const TabularDistribution a({0.5, 0.5}), b({1.0, 0.0, 0.0});
  EXPECT_THROW(v_of_g(a, a, b, ThreeLevel(0.5)), ShapeError);
  EXPECT_THROW(v_of_g(a, a, a, ObjectiveConfig{Variant::kLsgan, 1, 0.5, {}, 0.5}), ArgumentError);
  EXPECT_THROW(v_of_g(a, a, a, ObjectiveConfig{Variant::kThreeLevel, 1, 0.5, 0.0, {}}),
               ArgumentError);
}

TEST(VOfG, GradientMatchesFiniteDifferences) {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const auto pp = testing::random_tabular(4, rng), pm = testing::random_tabular(4, rng);
    const auto pg = testing::random_simplex(4, rng);
    for (const auto& cfg : {ThreeLevel(0.6, 0.3), TwoLevel(0.4, 5.0)}) {
      const auto g = v_of_g_gradient(pg, pp, pm, cfg);
      for (std::size_t k = 0; k < 4; ++k) {
        auto up = pg, down = pg;
        up[k] += 1e-6;
        down[k] -= 1e-6;
        const double fd = (v_of_g(up, pp, pm, cfg) - v_of_g(down, pp, pm, cfg)) / 2e-6;
        EXPECT_NEAR(g(static_cast<Eigen::Index>(k)), fd, 1e-7);
      }
    }
  }
}

TEST(Bound, JensenValues) {
  EXPECT_NEAR(jensen_lower_bound(ThreeLevel(0.5)), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(jensen_lower_bound(TwoLevel(0.5, 1.0)), 1.5 * Phi(1.0 / 3.0, 0.5) + 0.375, 1e-15);
  EXPECT_NEAR(jensen_lower_bound(TwoLevel(0.5, 1.0)), 0.416666, 1e-6);
  EXPECT_NEAR(jensen_lower_bound(ThreeLevel(0.6, 0.6 / 1.6)), 0.0, 1e-15);
}

TEST(Bound, HoldsOnRandomSimplexDraws) {
  Rng rng(44);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = 2 + rng() % 7;
    const double pi = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const double c = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto pp = testing::random_tabular(k, rng), pm = testing::random_tabular(k, rng);
    const auto pg = testing::random_tabular(k, rng);
    const double bound = 3.0 * Phi(pi / (pi + 1.0), c);
    EXPECT_NEAR(jensen_lower_bound(ThreeLevel(pi, c)), bound, 1e-15);
    EXPECT_GE(v_of_g(pg, pp, pm, ThreeLevel(pi, c)), bound - 1e-9);
  }
}

TEST(Bound, AlphaExpressionNonIncreasing) {
  Rng rng(45);
  for (int i = 0; i < 200; ++i) {
    const double pi = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    const double c = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    double prev = alpha_bound(pi, 0.0, c);
    for (int a = 1; a <= 1000; ++a) {
      const double alpha = a * 1e-3;
      const double here = alpha_bound(pi, alpha, c);
      EXPECT_LE(here, prev + 1e-15);
      const double oracle = (pi + alpha) * Phi(pi / (pi + alpha), c) + c * c * (3 - pi - alpha);
      EXPECT_NEAR(here, oracle, 1e-14);
      prev = here;
    }
    EXPECT_NEAR(alpha_bound(pi, 1.0, c), jensen_lower_bound(TwoLevel(pi, 1.0, c)), 1e-14);
  }
}

TEST(Bound, FiniteLambdaDisjointBoundIsValid) {
  Rng rng(46);
  for (int i = 0; i < 500; ++i) {
    const double pi = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const double lambda = std::exp(std::uniform_real_distribution<double>(-1.0, 7.0)(rng));
    const std::size_t k1 = 1 + rng() % 3, k2 = 1 + rng() % 3;
    std::vector<double> pp(k1 + k2, 0.0), pm(k1 + k2, 0.0);
    const auto head = testing::random_simplex(k1, rng), tail = testing::random_simplex(k2, rng);
    std::copy(head.begin(), head.end(), pp.begin());
    std::copy(tail.begin(), tail.end(), pm.begin() + static_cast<long>(k1));
    const auto pg = testing::random_tabular(k1 + k2, rng);
    const double v = v_of_g(pg, TabularDistribution(pp), TabularDistribution(pm),
                            TwoLevel(pi, lambda));
    EXPECT_GE(v, two_level_disjoint_bound(pi, lambda, 0.5) - 1e-9);
  }
  EXPECT_NEAR(two_level_disjoint_bound(0.4, 1e9, 0.5), jensen_lower_bound(TwoLevel(0.4, 1.0)),
              1e-8);
}

TEST(OptimalValues, ConstantAtTarget) {
  Rng rng(47);
  for (double pi : {0.3, 0.5, 0.7}) {
    const auto pp = testing::random_tabular(6, rng), pm = testing::random_tabular(6, rng);
    for (double v : optimal_discriminator_values(pp.mass(), pp, pm, ThreeLevel(pi))) {
      EXPECT_NEAR(v, pi / (pi + 1.0), 1e-12);
    }
  }
}

TEST(Partition, Definitions) {
  const TabularDistribution pp({1.0, 0.0}), pm({0.0, 1.0});
  const auto s = partition_support(pp, pm, TabularDistribution({0.6, 0.4}));
  EXPECT_EQ(s.s1, std::vector<std::size_t>{0});
  EXPECT_EQ(s.s2, std::vector<std::size_t>{1});
  EXPECT_TRUE(s.disjoint());
  EXPECT_DOUBLE_EQ(s.alpha, 0.6);
  EXPECT_DOUBLE_EQ(partition_support(pp, pm, pp).alpha, 1.0);

  const auto o = partition_support(TabularDistribution({0.7, 0.3}), TabularDistribution({0.2, 0.8}),
                                   TabularDistribution({0.5, 0.5}));
  EXPECT_EQ(o.overlap, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(o.disjoint());
}

TEST(Simplex, ProjectionProperties) {
  Rng rng(48);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    Eigen::VectorXd v(1 + rng() % 10);
    for (auto& x : v) x = n(rng);
    const auto p = project_to_simplex(v);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
    // Optimality: no simplex vertex is closer to v than p along the
    // first-order condition <v - p, q - p> <= 0.
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      Eigen::VectorXd q = Eigen::VectorXd::Zero(v.size());
      q(j) = 1.0;
      EXPECT_LE((v - p).dot(q - p), 1e-10);
    }
    EXPECT_TRUE(project_to_simplex(p).isApprox(p, 1e-12));
  }
}

// Independent brute force over p_g = [t, 1 - t], t on a 1e-4 lattice.
double BruteForceTv(const std::vector<double>& pp, const std::vector<double>& pm, double pi,
                    double d) {
  double best_v = std::numeric_limits<double>::infinity(), best_t = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double t = i * 1e-4;
    const double v = v_oracle({t, 1.0 - t}, pp, pm, pi, 0.5, true, d);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  return std::abs(best_t - pp[0]);
}

TEST(Minimize, TwoLevelDisjoint) {
  const TabularDistribution pp({1.0, 0.0}), pm({0.0, 1.0});
  for (auto method : {SearchMethod::kGrid, SearchMethod::kProjectedGradient}) {
    const auto m = minimize_v_g(pp, pm, TwoLevel(0.5, 100.0), method, 0.02);
    EXPECT_LT(tv_tabular(m.p_g_star, pp), 0.02) << to_string(method);
    EXPECT_TRUE(m.report.passed);
  }
}

TEST(Minimize, ThreeLevelOverlappingAndCounterexample) {
  const TabularDistribution pp({0.7, 0.3}), pm({0.2, 0.8});
  EXPECT_DOUBLE_EQ(theorem2_d(0.6), 0.125);
  for (auto method : {SearchMethod::kGrid, SearchMethod::kProjectedGradient}) {
    const auto m = minimize_v_g(pp, pm, ThreeLevel(0.6), method, 0.02);
    EXPECT_LT(tv_tabular(m.p_g_star, pp), 0.02);
  }

  // Oracle run first: with d forced to 0 the minimizer moves by TV 0.1.
  const double oracle_tv = BruteForceTv(as_vector(pp), as_vector(pm), 0.6, 0.0);
  EXPECT_NEAR(oracle_tv, 0.1, 1e-3);
  ObjectiveConfig wrong = ThreeLevel(0.6);
  wrong.d = 0.0;
  for (auto method : {SearchMethod::kGrid, SearchMethod::kProjectedGradient}) {
    const auto m = minimize_v_g(pp, pm, wrong, method, 0.02);
    EXPECT_GT(tv_tabular(m.p_g_star, pp), 0.05);
    EXPECT_NEAR(tv_tabular(m.p_g_star, pp), 0.1, 2e-3);
    EXPECT_FALSE(m.report.passed);
  }
}

TEST(Minimize, GridNeedsSmallSupport) {
  const auto pp = TabularDistribution::Uniform(7);
  EXPECT_THROW(minimize_v_g(pp, pp, ThreeLevel(0.5), SearchMethod::kGrid, 0.02), ArgumentError);
}

TEST(Suite, TheoremTwoDefault) {
  SuiteConfig suite;
  suite.support_sizes = {3};
  const auto r = verify_theorem(suite);
  ASSERT_EQ(r.reports.size(), 3u);
  for (const auto& rep : r.reports) {
    EXPECT_TRUE(rep.passed);
    EXPECT_LT(rep.agreement_tv, 0.02);
    EXPECT_TRUE(rep.bound_ok());
  }
  EXPECT_TRUE(r.all_passed());
}

TEST(Suite, TheoremOneDisjoint) {
  SuiteConfig suite;
  suite.theorem = 1;
  suite.supports = SupportLayout::kDisjoint;
  suite.support_sizes = {4};
  suite.pis = {0.5};
  const auto r = verify_theorem(suite);
  ASSERT_EQ(r.trends.size(), 1u);
  EXPECT_TRUE(r.trends[0].ok);
  EXPECT_LT(r.trends[0].tvs.back(), 0.02);
  EXPECT_TRUE(r.all_passed());
}

TEST(Suite, TheoremOneOverlappingIsRecordedNotRequired) {
  SuiteConfig suite;
  suite.theorem = 1;
  suite.support_sizes = {3};
  suite.pis = {0.5};
  suite.lambdas = {1.0, 1000.0};
  const auto r = verify_theorem(suite);
  bool any_failed = false;
  for (const auto& rep : r.reports) {
    EXPECT_FALSE(rep.expected_pass);
    any_failed |= !rep.passed;
  }
  EXPECT_TRUE(any_failed);
  EXPECT_TRUE(r.all_passed());
}

TEST(Instances, Layouts) {
  const auto [pp, pm] = make_instance(5, SupportLayout::kDisjoint, 3);
  EXPECT_TRUE(partition_support(pp, pm, pp).disjoint());
  const auto [qp, qm] = make_instance(4, SupportLayout::kOverlapping, 3);
  EXPECT_EQ(partition_support(qp, qm, qp).overlap.size(), 4u);
  const auto again = make_instance(4, SupportLayout::kOverlapping, 3);
  EXPECT_EQ(again.first, qp);
}

}  // namespace
}  // namespace purigan
