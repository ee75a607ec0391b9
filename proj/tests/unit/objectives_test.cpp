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

#include "purigan/objectives.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <vector>

#include "purigan/errors.hpp"
#include "test_support.hpp"

namespace purigan {
namespace {

using V = std::vector<double>;

ObjectiveConfig TwoLevel(double lambda) { return {Variant::kTwoLevel, lambda, 0.5, {}, {}}; }
ObjectiveConfig ThreeLevel(double d) { return {Variant::kThreeLevel, 1.0, 0.5, d, {}}; }
ObjectiveConfig Lsgan() { return {Variant::kLsgan, 1.0, 0.5, {}, {}}; }

bool BitEqual(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

TEST(DiscriminatorLoss, Examples) {
  EXPECT_DOUBLE_EQ(discriminator_loss(TwoLevel(1), V{1}, V{0}, V{0}), 0.0);
  EXPECT_DOUBLE_EQ(discriminator_loss(TwoLevel(1), V{0.5}, V{0.5}, V{0.5}), 0.75);
  EXPECT_DOUBLE_EQ(discriminator_loss(ThreeLevel(0.125), V{1}, V{0}, V{0.125}), 0.0);
}

TEST(DiscriminatorLoss, EmptyBatches) {
  EXPECT_THROW(discriminator_loss(TwoLevel(1), V{}, V{0}, V{0}), ArgumentError);
  EXPECT_THROW(discriminator_loss(TwoLevel(1), V{1}, V{0}, V{}), ArgumentError);
  EXPECT_NO_THROW(discriminator_loss(TwoLevel(0), V{1}, V{0}, V{}));
  EXPECT_NO_THROW(discriminator_loss(Lsgan(), V{1}, V{0}, V{}));
}

TEST(GeneratorLoss, Examples) {
  EXPECT_DOUBLE_EQ(generator_loss(TwoLevel(1), V{0.5}, V{0.5}, V{0.5}), 0.0);
  EXPECT_DOUBLE_EQ(generator_loss(TwoLevel(1), V{1}, V{0}, V{0.5}), 0.5);
  EXPECT_DOUBLE_EQ(generator_loss(Lsgan(), V{0.5}, V{0.5}, V{}), 0.0);
}

TEST(GeneratorLoss, StationaryAtC) {
  for (double c : {0.2, 0.5, 0.8}) {
    ObjectiveConfig cfg = TwoLevel(1);
    cfg.c = c;
    auto at = [&](double v) { return generator_loss(cfg, V{v, v}, V{v}, V{v, v, v}); };
    const double h = 1e-5;
    EXPECT_NEAR((at(c + h) - at(c - h)) / (2 * h), 0.0, 1e-8);
    EXPECT_LT(at(c), at(c + 0.01));
    EXPECT_LT(at(c), at(c - 0.01));
  }
}

TEST(Losses, ThreeLevelWithZeroDEqualsTwoLevelWithUnitLambda) {
  Rng rng(31);
  std::normal_distribution<double> n(0.4, 0.7);
  std::uniform_int_distribution<int> len(1, 64);
  for (int i = 0; i < 1000; ++i) {
    V a(static_cast<std::size_t>(len(rng))), b(static_cast<std::size_t>(len(rng))),
        c(static_cast<std::size_t>(len(rng)));
    for (auto* v : {&a, &b, &c}) {
      for (auto& x : *v) x = n(rng);
    }
    EXPECT_TRUE(BitEqual(discriminator_loss(ThreeLevel(0.0), a, b, c),
                         discriminator_loss(TwoLevel(1.0), a, b, c)));
    EXPECT_TRUE(BitEqual(generator_loss(ThreeLevel(0.0), a, b, c),
                         generator_loss(TwoLevel(1.0), a, b, c)));
  }
}

TEST(Losses, LsganEqualsTwoLevelWithZeroLambda) {
  Rng rng(32);
  std::normal_distribution<double> n(0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    V a(16), b(16), c(16);
    for (auto* v : {&a, &b, &c}) {
      for (auto& x : *v) x = n(rng);
    }
    EXPECT_TRUE(BitEqual(discriminator_loss(Lsgan(), a, b, c),
                         discriminator_loss(TwoLevel(0.0), a, b, c)));
  }
}

TEST(OptimalDiscriminator, TwoLevelExamples) {
  EXPECT_DOUBLE_EQ(optimal_discriminator_two_level(0.5, 0.25, 0.25, 1.0), 0.5);
  EXPECT_NEAR(optimal_discriminator_two_level(0.3, 0.1, 0.2, 3.0), 0.3, 1e-15);
  // Oracle: the grid minimizer of the integrand sits at 0.3 as well.
  const double at_dstar = testing::integrand_oracle(0.3, 0.3, 0.1, 0.2, 3.0, 0.0);
  EXPECT_LE(at_dstar, testing::integrand_grid_min(0.3, 0.1, 0.2, 3.0, 0.0) + 1e-12);
  EXPECT_LT(optimal_discriminator_two_level(0.5, 0.3, 0.2, 1e6), 1e-5);
  EXPECT_THROW(optimal_discriminator_two_level(0, 0, 0, 1), UndefinedPointError);
}

TEST(OptimalDiscriminator, ThreeLevelExamples) {
  EXPECT_DOUBLE_EQ(optimal_discriminator_three_level(0.3, 0.2, 0.0, 0.4), 0.6);
  EXPECT_NEAR(optimal_discriminator_three_level(0.4, 0.4, 0.2, 0.0), 0.4, 1e-15);
  EXPECT_LE(testing::integrand_oracle(0.4, 0.4, 0.4, 0.2, 1.0, 0.0),
            testing::integrand_grid_min(0.4, 0.4, 0.2, 1.0, 0.0) + 1e-12);
  EXPECT_THROW(optimal_discriminator_three_level(0, 0, 0, 0.1), UndefinedPointError);
}

TEST(OptimalDiscriminator, ThreeLevelConstantAtTarget) {
  Rng rng(33);
  for (double pi : {0.1, 0.3, 0.5, 0.6, 0.9}) {
    const double d = theorem2_d(pi);
    const auto pp = testing::random_simplex(6, rng), pm = testing::random_simplex(6, rng);
    for (std::size_t k = 0; k < 6; ++k) {
      const double p_d = pi * pp[k] + (1 - pi) * pm[k];
      EXPECT_NEAR(optimal_discriminator_three_level(p_d, pp[k], pm[k], d), pi / (pi + 1), 1e-12)
          << "pi " << pi << " k " << k;
    }
  }
}

TEST(OptimalDiscriminator, BeatsGridOnRandomTriples) {
  Rng rng(34);
  for (int i = 0; i < 1000; ++i) {
    const auto p_d = testing::random_simplex(3, rng), p_g = testing::random_simplex(3, rng),
               p_n = testing::random_simplex(3, rng);
    const std::size_t k = static_cast<std::size_t>(i % 3);
    for (double lambda : {0.5, 1.0, 5.0}) {
      const double D = optimal_discriminator_two_level(p_d[k], p_g[k], p_n[k], lambda);
      const double here = discriminator_integrand(TwoLevel(lambda), D, p_d[k], p_g[k], p_n[k]);
      EXPECT_LE(here, testing::integrand_grid_min(p_d[k], p_g[k], p_n[k], lambda, 0.0) + 1e-9);
    }
    std::uniform_real_distribution<double> ud(-0.6, 0.6);
    const double d = ud(rng);
    const double D = optimal_discriminator_three_level(p_d[k], p_g[k], p_n[k], d);
    EXPECT_LE(testing::integrand_oracle(D, p_d[k], p_g[k], p_n[k], 1.0, d),
              testing::integrand_grid_min(p_d[k], p_g[k], p_n[k], 1.0, d) + 1e-9);
  }
}

TEST(Theorem2D, Values) {
  EXPECT_DOUBLE_EQ(theorem2_d(0.5), 0.0);
  EXPECT_DOUBLE_EQ(theorem2_d(1.0), 0.5);
  EXPECT_DOUBLE_EQ(theorem2_d(0.2), -0.5);
  EXPECT_THROW(theorem2_d(0.0), ArgumentError);
  EXPECT_THROW(theorem2_d(1.1), ArgumentError);
}

TEST(ObjectiveConfig, ValidateAndResolve) {
  ObjectiveConfig cfg{Variant::kThreeLevel, 1.0, 0.5, {}, 0.6};
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.resolved_d(), 0.2 / 1.6);
  cfg.d = 0.0;
  EXPECT_DOUBLE_EQ(cfg.negative_target(), 0.0);
  cfg.pi.reset();
  cfg.d.reset();
  EXPECT_THROW(cfg.validate(), ArgumentError);
  EXPECT_THROW((ObjectiveConfig{Variant::kTwoLevel, -1.0, 0.5, {}, {}}.validate()), ArgumentError);
  EXPECT_THROW((ObjectiveConfig{Variant::kTwoLevel, 1.0, 1.0, {}, {}}.validate()), ArgumentError);
  EXPECT_EQ(parse_variant("three_level"), Variant::kThreeLevel);
  EXPECT_EQ(to_string(Variant::kLsgan), "lsgan");
  EXPECT_THROW(parse_variant("wgan"), ArgumentError);
}

}  // namespace
}  // namespace purigan
