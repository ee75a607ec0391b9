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

#include "purigan/scenarios.hpp"

#include <gtest/gtest.h>

#include "purigan/errors.hpp"

namespace purigan {
namespace {

TEST(Scenarios, DisjointIsSeparated) {
  const auto s = disjoint_scenario();
  EXPECT_TRUE(supports_separated(s.target, s.contamination));
  EXPECT_EQ(s.target.dimension(), 2);
}

TEST(Scenarios, LookupByName) {
  EXPECT_EQ(builtin_scenario("pu").name, "pu");
  EXPECT_EQ(builtin_scenario_names().size(), 2u);
  EXPECT_THROW(builtin_scenario("moons"), ArgumentError);
}

TEST(Scenarios, FractionNearModes) {
  const auto s = disjoint_scenario();
  Points p(4, 2);
  p << -4, 4,      // on a target mode
      4, 5.4,      // 2.8 sigma away
      4, 5.6,      // 3.2 sigma away
      -4, -4;      // contamination mode
  EXPECT_DOUBLE_EQ(fraction_near_modes(p, s.target), 0.5);
  EXPECT_DOUBLE_EQ(fraction_near_modes(p, s.contamination), 0.25);
  EXPECT_THROW(fraction_near_modes(Points::Zero(2, 3), s.target), ShapeError);
}

TEST(Scenarios, SamplesLandNearOwnModes) {
  const auto s = disjoint_scenario();
  Rng rng(1);
  const Points t = sample(s.target, rng, 5000);
  // Within 3 Mahalanobis units in 2-D: 1 - exp(-4.5) ~ 0.989.
  EXPECT_NEAR(fraction_near_modes(t, s.target), 1.0 - std::exp(-4.5), 0.01);
  EXPECT_EQ(fraction_near_modes(t, s.contamination), 0.0);
}

TEST(Scenarios, MakeDatasetCounts) {
  Rng rng(2);
  const auto ds = make_dataset(pu_scenario(), 500, 0.5, 0.2, rng);
  EXPECT_EQ(ds.mixed().rows(), 1000);
  EXPECT_EQ(ds.contamination_count(), 500u);
  EXPECT_EQ(ds.negatives().rows(), 200);
}

}  // namespace
}  // namespace purigan
