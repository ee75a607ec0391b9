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

#include <cmath>
#include <string>

#include "purigan/errors.hpp"

namespace purigan {

namespace {

constexpr double kLsganGeneratorTarget = 0.5;

void require_nonempty(std::span<const double> v, const char* what) {
  if (v.empty()) throw ArgumentError(std::string(what) + " batch is empty");
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kLsgan:
      return "lsgan";
    case Variant::kTwoLevel:
      return "two_level";
    case Variant::kThreeLevel:
      return "three_level";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "lsgan") return Variant::kLsgan;
  if (name == "two_level") return Variant::kTwoLevel;
  if (name == "three_level") return Variant::kThreeLevel;
  throw ArgumentError("unknown objective variant: " + std::string(name));
}

void ObjectiveConfig::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw ArgumentError("c must lie in (0, 1)");
  if (variant == Variant::kTwoLevel && !(lambda >= 0.0 && std::isfinite(lambda))) {
    throw ArgumentError("lambda must be finite and >= 0");
  }
  if (variant == Variant::kThreeLevel) {
    if (pi && !(*pi > 0.0 && *pi <= 1.0)) throw ArgumentError("pi must lie in (0, 1]");
    if (d && !std::isfinite(*d)) throw ArgumentError("d must be finite");
    if (!d && !pi) throw ArgumentError("three_level needs pi (or an explicit d)");
  }
}

double ObjectiveConfig::resolved_d() const {
  if (d) return *d;
  if (!pi) throw ArgumentError("three_level needs pi (or an explicit d)");
  return theorem2_d(*pi);
}

double ObjectiveConfig::negative_weight() const {
  switch (variant) {
    case Variant::kLsgan:
      return 0.0;
    case Variant::kTwoLevel:
      return lambda;
    case Variant::kThreeLevel:
      return 1.0;
  }
  return 0.0;
}

double ObjectiveConfig::negative_target() const {
  return variant == Variant::kThreeLevel ? resolved_d() : 0.0;
}

double ObjectiveConfig::generator_target() const {
  return variant == Variant::kLsgan ? kLsganGeneratorTarget : c;
}

bool ObjectiveConfig::requires_negatives() const {
  switch (variant) {
    case Variant::kLsgan:
      return false;
    case Variant::kTwoLevel:
      return lambda != 0.0;
    case Variant::kThreeLevel:
      return true;
  }
  return false;
}

double theorem2_d(double pi) {
  if (!(pi > 0.0 && pi <= 1.0)) throw ArgumentError("pi must lie in (0, 1]");
  return (2.0 * pi - 1.0) / (pi + 1.0);
}

double mean_squared_deviation(std::span<const double> values, double target) {
  require_nonempty(values, "input");
  double acc = 0.0;
  for (double v : values) {
    const double e = v - target;
    acc += e * e;
  }
  return acc / static_cast<double>(values.size());
}

double discriminator_loss(const ObjectiveConfig& cfg,
                          std::span<const double> d_data,
                          std::span<const double> d_gen,
                          std::span<const double> d_neg) {
  require_nonempty(d_data, "data");
  require_nonempty(d_gen, "generated");
  double loss = mean_squared_deviation(d_data, 1.0) + mean_squared_deviation(d_gen, 0.0);
  if (cfg.requires_negatives()) require_nonempty(d_neg, "negative");
  if (cfg.variant != Variant::kLsgan && !d_neg.empty()) {
    loss += cfg.negative_weight() * mean_squared_deviation(d_neg, cfg.negative_target());
  }
  return loss;
}

double generator_loss(const ObjectiveConfig& cfg,
                      std::span<const double> d_data,
                      std::span<const double> d_gen,
                      std::span<const double> d_neg) {
  require_nonempty(d_data, "data");
  require_nonempty(d_gen, "generated");
  const double target = cfg.generator_target();
  double loss = mean_squared_deviation(d_data, target) + mean_squared_deviation(d_gen, target);
  if (cfg.requires_negatives()) require_nonempty(d_neg, "negative");
  if (cfg.variant != Variant::kLsgan && !d_neg.empty()) {
    loss += mean_squared_deviation(d_neg, target);
  }
  return loss;
}

double optimal_discriminator_two_level(double p_d, double p_g, double p_neg,
                                       double lambda) {
  const double den = p_d + p_g + lambda * p_neg;
  if (!(den > 0.0)) throw UndefinedPointError("all densities vanish at this point");
  return p_d / den;
}

double optimal_discriminator_three_level(double p_d, double p_g, double p_neg,
                                         double d) {
  const double den = p_d + p_g + p_neg;
  if (!(den > 0.0)) throw UndefinedPointError("all densities vanish at this point");
  return (p_d + d * p_neg) / den;
}

double discriminator_integrand(const ObjectiveConfig& cfg, double D, double p_d,
                               double p_g, double p_neg) {
  const double a = D - 1.0;
  const double t = D - cfg.negative_target();
  return a * a * p_d + D * D * p_g + cfg.negative_weight() * t * t * p_neg;
}

}  // namespace purigan
