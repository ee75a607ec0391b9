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

#include <Eigen/Core>
#include <cstdint>
#include <span>

#include "purigan/distributions.hpp"

namespace purigan {

// Sample mean and (unbiased) covariance of a point set.
struct GaussianSummary {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::Index n = 0;
};

GaussianSummary summarize(const Points& samples);

// ||mu_a - mu_b||^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}) between fitted
// Gaussians. The square-root trace is taken from the eigenvalues of the
// symmetric matrix S_a^{1/2} S_b S_a^{1/2}; eigenvalues in (-1e-8, 0) are
// clamped to zero, anything more negative raises NumericError.
double frechet_gaussian(const Points& a, const Points& b);
double frechet_gaussian(const GaussianSummary& a, const GaussianSummary& b);

// Unbiased squared MMD with k(x, y) = exp(-|x-y|^2 / (2 h^2)).
double mmd_rbf(const Points& a, const Points& b, double bandwidth);

// Median pairwise Euclidean distance over the pooled sample (at most
// `max_points` leading rows of each set are used).
double median_bandwidth(const Points& a, const Points& b,
                        Eigen::Index max_points = 500);

// 0.5 * sum |p_k - q_k|.
double tv_tabular(const TabularDistribution& p, const TabularDistribution& q);

// P(score of a random positive > score of a random negative), ties 0.5.
double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels);

struct F1Accuracy {
  double f1 = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

F1Accuracy f1_accuracy(std::span<const std::uint8_t> predictions,
                       std::span<const std::uint8_t> labels);

}  // namespace purigan
