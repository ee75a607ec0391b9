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

#include "purigan/tasks.hpp"

#include <algorithm>
#include <numeric>

#include "purigan/contamination.hpp"
#include "purigan/errors.hpp"

namespace purigan {

std::vector<double> discriminator_scores(const Mlp& discriminator, const Points& points) {
  if (discriminator.output_dim() != 1) throw ShapeError("discriminator must have one output");
  if (points.cols() != discriminator.input_dim()) {
    throw ShapeError("points do not match the discriminator input width");
  }
  const Eigen::MatrixXd out = forward(discriminator, points);
  return {out.data(), out.data() + out.rows()};
}

std::vector<ScoredPoint> anomaly_scores(const Mlp& discriminator, const Points& points) {
  const auto scores = discriminator_scores(discriminator, points);
  std::vector<ScoredPoint> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i].point = points.row(static_cast<Eigen::Index>(i)).transpose();
    out[i].score = scores[i];
  }
  return out;
}

std::vector<std::uint8_t> classify_scores(std::span<const double> scores,
                                          const ThresholdPolicy& policy) {
  if (scores.empty()) throw ArgumentError("no points to classify");
  std::vector<std::uint8_t> labels(scores.size(), 0);
  if (policy.kind == ThresholdPolicy::Kind::kFixed) {
    for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] > policy.value;
    return labels;
  }
  if (!(policy.value >= 0.0 && policy.value <= 1.0)) {
    throw ArgumentError("quantile policy needs pi in [0, 1]");
  }
  const std::size_t k =
      std::min(scores.size(), round_count(policy.value * static_cast<double>(scores.size())));
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  for (std::size_t i = 0; i < k; ++i) labels[order[i]] = 1;
  return labels;
}

std::vector<std::uint8_t> pu_classify(const Mlp& discriminator, const Points& points,
                                      const ThresholdPolicy& policy) {
  if (points.rows() == 0) throw ArgumentError("no points to classify");
  return classify_scores(discriminator_scores(discriminator, points), policy);
}

void apply_threshold(std::vector<ScoredPoint>& scored, const ThresholdPolicy& policy) {
  std::vector<double> scores(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) scores[i] = scored[i].score;
  const auto labels = classify_scores(scores, policy);
  for (std::size_t i = 0; i < scored.size(); ++i) scored[i].predicted_label = labels[i];
}

}  // namespace purigan
