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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "purigan/objectives.hpp"
#include "purigan/oracle.hpp"
#include "purigan/scenarios.hpp"
#include "purigan/trainer.hpp"

namespace purigan::app {

// Invalid or unreadable configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DistributionsSection {
  std::string scenario = "disjoint";
  // Explicit densities replace the named scenario when both are given.
  std::optional<AnalyticDensity> target;
  std::optional<AnalyticDensity> contamination;

  Scenario resolve() const;
};

struct ContaminationSection {
  std::size_t target_count = 1200;
  double gamma_p = 0.4;
  double gamma_c = 0.2;
  std::uint64_t seed = 1;
};

struct ObjectiveSection {
  Variant variant = Variant::kTwoLevel;
  double lambda = 1.0;
  bool lambda_given = false;
  double c = 0.5;
  std::optional<double> d;   // nullopt = derived from pi
  std::optional<double> pi;  // nullopt = 1 - gamma_p of the dataset

  ObjectiveConfig resolve(double dataset_pi) const;
};

struct TrainSection {
  int latent_dim = 2;
  int hidden_units = 64;
  int hidden_layers = 2;
  std::size_t batch_size = 128;
  int d_steps_per_g_step = 1;
  long long total_g_steps = 5000;
  double lr_g = 2e-4;
  double lr_d = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  long long eval_every = 500;
  std::size_t eval_samples = 2000;
  std::size_t mmd_samples = 500;
  std::uint64_t seed = 1;

  TrainConfig resolve(const ObjectiveConfig& objective) const;
};

struct SweepSection {
  std::vector<double> gamma_p;               // empty = [contamination.gamma_p]
  std::vector<double> gamma_c;               // empty = [contamination.gamma_c]
  std::vector<std::optional<double>> pi;     // assumed pi; nullopt = auto
  std::vector<Variant> variants;             // empty = [objective.variant]
  int replicates = 3;
  std::size_t eval_points = 2000;            // per class, for AUROC
  bool gamma_p_given = false;
  bool gamma_c_given = false;
  bool pi_given = false;
  bool variants_given = false;
};

struct VerifySection {
  SuiteConfig suite;
};

struct TasksSection {
  std::optional<std::string> checkpoint;
  std::optional<std::string> points;  // CSV with x1..xd; sampled when absent
  std::optional<std::string> labels;  // CSV with is_target
  std::string policy = "quantile";
  double threshold = 0.5;
  std::optional<double> pi;
  std::size_t eval_points = 2000;     // per class when sampling
  std::uint64_t seed = 7;
};

struct OutputSection {
  std::string directory = "purigan_out";
  bool svg = true;
  std::size_t svg_points = 1500;
};

struct ExperimentConfig {
  DistributionsSection distributions;
  ContaminationSection contamination;
  ObjectiveSection objective;
  TrainSection train;
  SweepSection sweep;
  VerifySection verify;
  TasksSection tasks;
  OutputSection output;
};

// Parses a JSON document. Unknown keys, wrong types and out-of-range values
// raise ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// The complete, defaults-resolved config as JSON.
std::string dump_config(const ExperimentConfig& cfg);

// Replaces every configured seed with `seed`.
void apply_seed(ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace purigan::app
