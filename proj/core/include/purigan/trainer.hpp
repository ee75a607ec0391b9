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

#include "purigan/contamination.hpp"
#include "purigan/distributions.hpp"
#include "purigan/net.hpp"
#include "purigan/objectives.hpp"

namespace purigan {

struct TrainConfig {
  ObjectiveConfig objective;
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
  std::uint64_t seed = 0;
  // Written with the last good state when training aborts.
  std::optional<std::filesystem::path> checkpoint_path;

  void validate() const;
};

struct HistoryRow {
  long long step = 0;
  double d_loss = 0.0;
  double g_loss = 0.0;
  double frechet = 0.0;  // NaN without an evaluation target
  double mmd = 0.0;
};

struct TrainState {
  TrainConfig config;
  Mlp generator;
  Mlp discriminator;
  AdamState g_opt;
  AdamState d_opt;
  long long step = 0;  // completed generator updates
  Rng rng;
  std::vector<HistoryRow> history;
};

// Raised when a loss or gradient becomes non-finite. The state of the last
// evaluation point is kept and, when the config names a path, written there.
class TrainingAborted : public std::runtime_error {
 public:
  TrainingAborted(const std::string& what, long long failed_step, TrainState last_good,
                  std::optional<std::filesystem::path> checkpoint)
      : std::runtime_error(what),
        failed_step_(failed_step),
        last_good_(std::move(last_good)),
        checkpoint_(std::move(checkpoint)) {}

  long long failed_step() const { return failed_step_; }
  const TrainState& last_good() const { return last_good_; }
  const std::optional<std::filesystem::path>& checkpoint() const { return checkpoint_; }

 private:
  long long failed_step_;
  TrainState last_good_;
  std::optional<std::filesystem::path> checkpoint_;
};

// Generator latent_dim -> hidden x layers (tanh) -> data_dim;
// discriminator data_dim -> hidden x layers (leaky relu) -> 1.
TrainState init_state(const TrainConfig& cfg, Eigen::Index data_dim);

// Advances training by up to `g_steps` generator updates, never past
// config.total_g_steps. eval_target may be null (metrics become NaN).
void train_steps(TrainState& state, const TrainingView& data,
                 const AnalyticDensity* eval_target, long long g_steps);

TrainState train(const TrainConfig& cfg, const TrainingView& data,
                 const AnalyticDensity* eval_target);

// n generator samples from standard-normal latents.
Points generate(const Mlp& generator, std::size_t n, Rng& rng);
Points generate(const TrainState& state, std::size_t n, Rng& rng);

struct Evaluation {
  double frechet = 0.0;
  double mmd = 0.0;
};

// Frechet distance and MMD (median bandwidth) between generated and target
// samples, drawn from an RNG derived from (seed, tag).
Evaluation evaluate_generator(const Mlp& generator, const AnalyticDensity& target,
                              std::size_t n, std::size_t mmd_n, std::uint64_t seed,
                              std::uint64_t tag);

void save_checkpoint(const TrainState& state, const std::filesystem::path& path);
TrainState load_checkpoint(const std::filesystem::path& path);

std::string encode_checkpoint(const TrainState& state);
TrainState decode_checkpoint(std::string_view bytes);

}  // namespace purigan
