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
#include <functional>
#include <vector>

#include "purigan/distributions.hpp"

namespace purigan {

class BinaryWriter;
class BinaryReader;

enum class Activation { kTanh, kLeakyRelu };

inline constexpr double kLeakySlope = 0.2;

// y = x W^T + b for a batch x with one sample per row.
struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

// Parameters (or parameter-shaped gradients / moments) of a network.
using ParamSet = std::vector<DenseLayer>;

// Fully connected feed-forward network. Hidden layers use the configured
// activation; the output head is always affine.
class Mlp {
 public:
  Mlp() = default;
  // Weights and biases ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  Mlp(std::vector<int> layer_sizes, Activation hidden, Rng& rng);
  // All parameters zero.
  static Mlp Zeros(std::vector<int> layer_sizes, Activation hidden);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  Activation hidden_activation() const { return hidden_; }
  Eigen::Index input_dim() const { return sizes_.front(); }
  Eigen::Index output_dim() const { return sizes_.back(); }
  std::size_t parameter_count() const;

  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  std::vector<int> sizes_;
  Activation hidden_ = Activation::kTanh;
  ParamSet params_;
};

// Activations kept for the backward pass. post[0] is the input batch,
// post[i] the output of layer i (after activation for hidden layers).
struct ForwardTrace {
  std::vector<Eigen::MatrixXd> post;
  const Eigen::MatrixXd& output() const { return post.back(); }
};

// Outputs, one row per input row. Throws ShapeError on a width mismatch and
// NumericError (with the layer index) on non-finite activations.
Eigen::MatrixXd forward(const Mlp& net, const Points& batch);
ForwardTrace forward_trace(const Mlp& net, const Points& batch);

struct BackwardResult {
  ParamSet grads;            // empty when parameter gradients were skipped
  Eigen::MatrixXd d_input;   // dL/d(batch), same shape as the batch
};

// Propagates dL/d(output) back through a recorded forward pass.
BackwardResult backward(const Mlp& net, const ForwardTrace& trace,
                        const Eigen::MatrixXd& d_output,
                        bool want_param_grads = true);

// A scalar loss of the network outputs and its gradient w.r.t. them.
struct LossEval {
  double value = 0.0;
  Eigen::MatrixXd d_output;
};
using LossFn = std::function<LossEval(const Eigen::MatrixXd& outputs)>;

struct GradientResult {
  double loss = 0.0;
  ParamSet grads;
};

// Reverse-mode gradients of loss(forward(net, batch)) w.r.t. all parameters.
GradientResult gradients(const Mlp& net, const Points& batch,
                         const LossFn& loss);

// Mean-squared-error loss against a constant target, averaged over the batch.
LossEval mean_squared_to(const Eigen::MatrixXd& outputs, double target);

ParamSet zeros_like(const ParamSet& p);
Eigen::VectorXd flatten(const ParamSet& p);
void unflatten(const Eigen::VectorXd& flat, ParamSet& p);
bool all_finite(const ParamSet& p);

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adaptive-moment optimizer state for one network.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const Mlp& net, AdamOptions options);

  const AdamOptions& options() const { return options_; }
  long long step() const { return step_; }
  const ParamSet& first_moment() const { return first_; }
  const ParamSet& second_moment() const { return second_; }

  friend void optimizer_step(AdamState& state, Mlp& net, const ParamSet& grads);
  friend void write_adam(BinaryWriter& w, const AdamState& s);
  friend AdamState read_adam(BinaryReader& r);
  friend bool operator==(const AdamState& a, const AdamState& b);

 private:
  AdamOptions options_;
  long long step_ = 0;
  ParamSet first_;
  ParamSet second_;
};

// One bias-corrected Adam update. Throws NumericError on non-finite grads and
// ShapeError when grads do not match the network.
void optimizer_step(AdamState& state, Mlp& net, const ParamSet& grads);

void write_mlp(BinaryWriter& w, const Mlp& net);
Mlp read_mlp(BinaryReader& r);
void write_adam(BinaryWriter& w, const AdamState& s);
AdamState read_adam(BinaryReader& r);

}  // namespace purigan
