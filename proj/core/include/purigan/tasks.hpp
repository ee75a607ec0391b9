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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "purigan/distributions.hpp"
#include "purigan/net.hpp"

namespace purigan {

struct ScoredPoint {
  Eigen::VectorXd point;
  double score = 0.0;  // raw discriminator output, higher = more normal
  std::optional<std::uint8_t> predicted_label;
};

// Raw discriminator outputs, one per row.
std::vector<double> discriminator_scores(const Mlp& discriminator, const Points& points);

std::vector<ScoredPoint> anomaly_scores(const Mlp& discriminator, const Points& points);

struct ThresholdPolicy {
  enum class Kind { kFixed, kQuantile };
  Kind kind = Kind::kQuantile;
  double value = 0.5;  // threshold t, or the positive fraction pi

  static ThresholdPolicy Fixed(double t) { return {Kind::kFixed, t}; }
  static ThresholdPolicy Quantile(double pi) { return {Kind::kQuantile, pi}; }
};

// fixed(t): positive iff score > t. quantile(pi): the round(pi * n) highest
// scores are positive; equal scores are ranked by position.
std::vector<std::uint8_t> classify_scores(std::span<const double> scores,
                                          const ThresholdPolicy& policy);

std::vector<std::uint8_t> pu_classify(const Mlp& discriminator, const Points& points,
                                      const ThresholdPolicy& policy);

// Sets predicted_label on every point.
void apply_threshold(std::vector<ScoredPoint>& scored, const ThresholdPolicy& policy);

}  // namespace purigan
