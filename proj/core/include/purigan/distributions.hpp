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
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace purigan {

// All randomness flows through caller-owned engines of this type.
using Rng = std::mt19937_64;

// A set of points, one point per row.
using Points = Eigen::MatrixXd;

// Probability vector over a finite support {0, ..., K-1}.
//
// The constructor accepts any non-negative, finite, not-all-zero vector and
// normalizes it, so near-simplex iterates from optimizers can be wrapped
// directly.
class TabularDistribution {
 public:
  explicit TabularDistribution(std::vector<double> weights);

  static TabularDistribution Uniform(std::size_t support_size);
  static TabularDistribution PointMass(std::size_t support_size, std::size_t k);

  std::size_t support_size() const { return mass_.size(); }
  std::span<const double> mass() const { return mass_; }
  double operator[](std::size_t k) const { return mass_[k]; }

  friend bool operator==(const TabularDistribution&,
                         const TabularDistribution&) = default;

 private:
  std::vector<double> mass_;
};

struct GaussianComponent {
  double weight = 1.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Finite Gaussian mixture in R^d. Covariances must be symmetric positive
// definite; weights are checked to sum to one and then renormalized.
class AnalyticDensity {
 public:
  explicit AnalyticDensity(std::vector<GaussianComponent> components);

  static AnalyticDensity Gaussian(Eigen::VectorXd mean,
                                  Eigen::MatrixXd covariance);
  // Isotropic mixture with equal weights: N(mean_i, sigma^2 I).
  static AnalyticDensity IsotropicMixture(
      const std::vector<Eigen::VectorXd>& means, double sigma);

  Eigen::Index dimension() const { return dimension_; }
  const std::vector<GaussianComponent>& components() const {
    return components_;
  }
  // Largest marginal standard deviation of component i.
  double component_scale(std::size_t i) const { return scales_[i]; }

 private:
  friend double eval_pdf(const AnalyticDensity&,
                         const Eigen::Ref<const Eigen::VectorXd>&);
  friend Points sample(const AnalyticDensity&, Rng&, std::size_t);

  std::vector<GaussianComponent> components_;
  Eigen::Index dimension_ = 0;
  std::vector<Eigen::MatrixXd> cholesky_;  // lower factors
  std::vector<double> log_norm_;           // -0.5 (d log 2pi + log|S|)
  std::vector<double> scales_;
};

using AnyDistribution = std::variant<TabularDistribution, AnalyticDensity>;

// Probability mass at support index k. Throws DomainError when k >= K.
double eval_pdf(const TabularDistribution& dist, std::size_t k);

// Density at x. Throws ShapeError on dimension mismatch.
double eval_pdf(const AnalyticDensity& dist,
                const Eigen::Ref<const Eigen::VectorXd>& x);

// n i.i.d. support indices. Throws ArgumentError when n == 0.
std::vector<std::size_t> sample(const TabularDistribution& dist, Rng& rng,
                                std::size_t n);

// n i.i.d. points: component choice, then an affine map of standard normals.
Points sample(const AnalyticDensity& dist, Rng& rng, std::size_t n);

// pi * p_plus + (1 - pi) * p_minus, entrywise. pi must lie in (0, 1).
TabularDistribution make_mixture(double pi, const TabularDistribution& p_plus,
                                 const TabularDistribution& p_minus);

// True when every pair of component means (one from each density) is at
// least `sigmas` combined standard deviations apart. This is the working
// definition of "disjoint support" for continuous densities.
bool supports_separated(const AnalyticDensity& a, const AnalyticDensity& b,
                        double sigmas = 8.0);

// Self-describing JSON documents:
//   {"kind":"tabular","support":K,"mass":[...]}
//   {"kind":"gaussian_mixture","dimension":d,"weights":[...],
//    "means":[[...],...],"covariances":[[[...],...],...]}
std::string to_json(const TabularDistribution& dist);
std::string to_json(const AnalyticDensity& dist);
AnyDistribution distribution_from_json(std::string_view text);

}  // namespace purigan
