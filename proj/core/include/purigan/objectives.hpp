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

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace purigan {

enum class Variant { kLsgan, kTwoLevel, kThreeLevel };

std::string_view to_string(Variant v);
// Accepts "lsgan", "two_level", "three_level". Throws ArgumentError.
Variant parse_variant(std::string_view name);

// Selects the adversarial objective and its constants.
//
//   lsgan       D: (D(x)-1)^2 on X, D(G(z))^2;            G: target 0.5
//   two_level   adds lambda * D(x-)^2 on X-;              G: target c
//   three_level adds (D(x-)-d)^2 on X-, d from pi or set; G: target c
//
// `lambda` only matters for two_level; `d` and `pi` only for three_level.
struct ObjectiveConfig {
  Variant variant = Variant::kTwoLevel;
  double lambda = 1.0;
  double c = 0.5;
  std::optional<double> d;   // explicit override of the negative target
  std::optional<double> pi;  // assumed proportion of target instances

  // Throws ArgumentError on out-of-range constants or a three-level config
  // with neither d nor pi.
  void validate() const;

  // Negative target: d if set, else (2 pi - 1) / (pi + 1).
  double resolved_d() const;
  // Weight and target of the X- term of the discriminator loss.
  double negative_weight() const;
  double negative_target() const;
  // Target value the generator drives every term toward.
  double generator_target() const;
  // Whether the discriminator loss has a (possibly zero-weight) X- term that
  // needs negative samples.
  bool requires_negatives() const;
};

// d = (2 pi - 1) / (pi + 1), the negative target that makes p_g = p+ the
// generator optimum. pi must lie in (0, 1].
double theorem2_d(double pi);

// mean((v - target)^2). Throws ArgumentError on an empty span.
double mean_squared_deviation(std::span<const double> values, double target);

// Batch discriminator loss: mean(d_data-1)^2 + mean(d_gen)^2 + X- term.
double discriminator_loss(const ObjectiveConfig& cfg,
                          std::span<const double> d_data,
                          std::span<const double> d_gen,
                          std::span<const double> d_neg);

// Batch generator loss: squared deviation from the generator target summed
// over the data, generated and (PuriGAN variants) negative batches. The X-
// term has no dependence on the generator and is reported for fidelity only.
double generator_loss(const ObjectiveConfig& cfg,
                      std::span<const double> d_data,
                      std::span<const double> d_gen,
                      std::span<const double> d_neg);

// Pointwise minimizers of the discriminator integrands. Throw
// UndefinedPointError when the denominator vanishes.
double optimal_discriminator_two_level(double p_d, double p_g, double p_neg,
                                       double lambda);
double optimal_discriminator_three_level(double p_d, double p_g, double p_neg,
                                         double d);

// Discriminator integrand at one point for a candidate output D:
//   (D-1)^2 p_d + D^2 p_g + w (D - t)^2 p_neg
// with (w, t) = (lambda, 0) for two_level, (1, d) for three_level.
double discriminator_integrand(const ObjectiveConfig& cfg, double D, double p_d,
                               double p_g, double p_neg);

}  // namespace purigan
