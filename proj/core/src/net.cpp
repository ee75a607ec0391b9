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

#include "purigan/net.hpp"

#include <cmath>
#include <string>

#include "purigan/errors.hpp"
#include "purigan/serialize.hpp"

namespace purigan {

namespace {

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw ShapeError("an MLP needs at least input and output sizes");
  for (int s : sizes) {
    if (s <= 0) throw ShapeError("layer sizes must be positive");
  }
}

void apply_activation(Activation act, Eigen::MatrixXd& z) {
  if (act == Activation::kTanh) {
    z = z.array().tanh().matrix();
  } else {
    z = z.unaryExpr([](double v) { return v > 0.0 ? v : kLeakySlope * v; });
  }
}

// Multiplies g by the activation derivative, expressed through the
// activation output y.
void scale_by_derivative(Activation act, const Eigen::MatrixXd& y,
                         Eigen::MatrixXd& g) {
  if (act == Activation::kTanh) {
    g.array() *= 1.0 - y.array().square();
  } else {
    g.array() *= y.unaryExpr([](double v) { return v > 0.0 ? 1.0 : kLeakySlope; })
                     .array();
  }
}

// x W^T + b computed one row at a time. A blocked matrix product rounds
// differently depending on where a row sits in the batch; this keeps every
// output row a function of its own input row only.
Eigen::MatrixXd affine_rows(const Eigen::MatrixXd& x, const DenseLayer& layer) {
  Eigen::MatrixXd z(x.rows(), layer.weight.rows());
  Eigen::VectorXd row(layer.weight.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    row.noalias() = layer.weight * x.row(i).transpose();
    row += layer.bias;
    z.row(i) = row.transpose();
  }
  return z;
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes, Activation hidden, Rng& rng)
    : sizes_(std::move(layer_sizes)), hidden_(hidden) {
  check_sizes(sizes_);
  for (std::size_t i = 0; i + 1 < sizes_.size(); ++i) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[i]));
    std::uniform_real_distribution<double> unif(-bound, bound);
    DenseLayer layer;
    layer.weight.resize(sizes_[i + 1], sizes_[i]);
    layer.bias.resize(sizes_[i + 1]);
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = unif(rng);
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = unif(rng);
    params_.push_back(std::move(layer));
  }
}

Mlp Mlp::Zeros(std::vector<int> layer_sizes, Activation hidden) {
  check_sizes(layer_sizes);
  Mlp net;
  net.sizes_ = std::move(layer_sizes);
  net.hidden_ = hidden;
  for (std::size_t i = 0; i + 1 < net.sizes_.size(); ++i) {
    net.params_.push_back({Eigen::MatrixXd::Zero(net.sizes_[i + 1], net.sizes_[i]),
                           Eigen::VectorXd::Zero(net.sizes_[i + 1])});
  }
  return net;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : params_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.sizes_ != b.sizes_ || a.hidden_ != b.hidden_) return false;
  for (std::size_t i = 0; i < a.params_.size(); ++i) {
    if (a.params_[i].weight != b.params_[i].weight ||
        a.params_[i].bias != b.params_[i].bias) {
      return false;
    }
  }
  return true;
}

ForwardTrace forward_trace(const Mlp& net, const Points& batch) {
  if (batch.cols() != net.input_dim()) {
    throw ShapeError("batch width " + std::to_string(batch.cols()) +
                     " does not match network input " +
                     std::to_string(net.input_dim()));
  }
  ForwardTrace trace;
  trace.post.reserve(net.params().size() + 1);
  trace.post.push_back(batch);
  const std::size_t last = net.params().size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const auto& layer = net.params()[i];
    Eigen::MatrixXd z = affine_rows(trace.post.back(), layer);
    if (i != last) apply_activation(net.hidden_activation(), z);
    if (!z.allFinite()) {
      throw NumericError("non-finite activation in layer " + std::to_string(i), i);
    }
    trace.post.push_back(std::move(z));
  }
  return trace;
}

Eigen::MatrixXd forward(const Mlp& net, const Points& batch) {
  return std::move(forward_trace(net, batch).post.back());
}

BackwardResult backward(const Mlp& net, const ForwardTrace& trace,
                        const Eigen::MatrixXd& d_output, bool want_param_grads) {
  const std::size_t n_layers = net.params().size();
  if (trace.post.size() != n_layers + 1 || d_output.rows() != trace.output().rows() ||
      d_output.cols() != trace.output().cols()) {
    throw ShapeError("output gradient does not match the forward pass");
  }
  BackwardResult result;
  if (want_param_grads) result.grads.resize(n_layers);
  Eigen::MatrixXd g = d_output;
  for (std::size_t i = n_layers; i-- > 0;) {
    if (i + 1 != n_layers) scale_by_derivative(net.hidden_activation(), trace.post[i + 1], g);
    if (want_param_grads) {
      result.grads[i].weight = g.transpose() * trace.post[i];
      result.grads[i].bias = g.colwise().sum().transpose();
    }
    g = g * net.params()[i].weight;
    if (!g.allFinite()) {
      throw NumericError("non-finite gradient in layer " + std::to_string(i), i);
    }
  }
  result.d_input = std::move(g);
  return result;
}

GradientResult gradients(const Mlp& net, const Points& batch, const LossFn& loss) {
  const auto trace = forward_trace(net, batch);
  LossEval eval = loss(trace.output());
  if (!std::isfinite(eval.value)) {
    throw NumericError("non-finite loss", net.params().size() - 1);
  }
  auto back = backward(net, trace, eval.d_output, true);
  return {eval.value, std::move(back.grads)};
}

LossEval mean_squared_to(const Eigen::MatrixXd& outputs, double target) {
  const double n = static_cast<double>(outputs.rows());
  Eigen::MatrixXd diff = outputs.array() - target;
  return {diff.squaredNorm() / n, (2.0 / n) * diff};
}

ParamSet zeros_like(const ParamSet& p) {
  ParamSet z;
  z.reserve(p.size());
  for (const auto& l : p) {
    z.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                 Eigen::VectorXd::Zero(l.bias.size())});
  }
  return z;
}

Eigen::VectorXd flatten(const ParamSet& p) {
  Eigen::Index n = 0;
  for (const auto& l : p) n += l.weight.size() + l.bias.size();
  Eigen::VectorXd flat(n);
  Eigen::Index at = 0;
  for (const auto& l : p) {
    flat.segment(at, l.weight.size()) =
        Eigen::Map<const Eigen::VectorXd>(l.weight.data(), l.weight.size());
    at += l.weight.size();
    flat.segment(at, l.bias.size()) = l.bias;
    at += l.bias.size();
  }
  return flat;
}

void unflatten(const Eigen::VectorXd& flat, ParamSet& p) {
  Eigen::Index at = 0;
  for (auto& l : p) {
    if (at + l.weight.size() + l.bias.size() > flat.size()) {
      throw ShapeError("flat parameter vector too short");
    }
    Eigen::Map<Eigen::VectorXd>(l.weight.data(), l.weight.size()) =
        flat.segment(at, l.weight.size());
    at += l.weight.size();
    l.bias = flat.segment(at, l.bias.size());
    at += l.bias.size();
  }
  if (at != flat.size()) throw ShapeError("flat parameter vector too long");
}

bool all_finite(const ParamSet& p) {
  for (const auto& l : p) {
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

AdamState::AdamState(const Mlp& net, AdamOptions options)
    : options_(options), first_(zeros_like(net.params())), second_(zeros_like(net.params())) {
  if (!(options.learning_rate > 0.0) || !(options.beta1 >= 0.0 && options.beta1 < 1.0) ||
      !(options.beta2 >= 0.0 && options.beta2 < 1.0) || !(options.epsilon > 0.0)) {
    throw ArgumentError("invalid Adam options");
  }
}

void optimizer_step(AdamState& state, Mlp& net, const ParamSet& grads) {
  auto& params = net.params();
  if (grads.size() != params.size() || state.first_.size() != params.size()) {
    throw ShapeError("gradient set does not match the network");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i].weight.rows() != params[i].weight.rows() ||
        grads[i].weight.cols() != params[i].weight.cols() ||
        grads[i].bias.size() != params[i].bias.size()) {
      throw ShapeError("gradient shape mismatch in layer " + std::to_string(i));
    }
    if (!grads[i].weight.allFinite() || !grads[i].bias.allFinite()) {
      throw NumericError("non-finite gradient in layer " + std::to_string(i), i);
    }
  }

  const auto& o = state.options_;
  ++state.step_;
  const double t = static_cast<double>(state.step_);
  const double c1 = 1.0 - std::pow(o.beta1, t);
  const double c2 = 1.0 - std::pow(o.beta2, t);
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = o.beta1 * m + (1.0 - o.beta1) * g;
    v = o.beta2 * v + (1.0 - o.beta2) * g.cwiseProduct(g);
    param.array() -= o.learning_rate * (m.array() / c1) /
                     ((v.array() / c2).sqrt() + o.epsilon);
  };
  for (std::size_t i = 0; i < params.size(); ++i) {
    update(params[i].weight, state.first_[i].weight, state.second_[i].weight, grads[i].weight);
    update(params[i].bias, state.first_[i].bias, state.second_[i].bias, grads[i].bias);
  }
}

bool operator==(const AdamState& a, const AdamState& b) {
  auto same = [](const ParamSet& x, const ParamSet& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].weight != y[i].weight || x[i].bias != y[i].bias) return false;
    }
    return true;
  };
  return a.step_ == b.step_ && a.options_.learning_rate == b.options_.learning_rate &&
         a.options_.beta1 == b.options_.beta1 && a.options_.beta2 == b.options_.beta2 &&
         a.options_.epsilon == b.options_.epsilon && same(a.first_, b.first_) &&
         same(a.second_, b.second_);
}

namespace {

void write_params(BinaryWriter& w, const ParamSet& p) {
  w.put<std::uint64_t>(p.size());
  for (const auto& l : p) {
    w.put_matrix(l.weight);
    w.put_vector(l.bias);
  }
}

ParamSet read_params(BinaryReader& r) {
  const auto n = r.get<std::uint64_t>();
  if (n > 1024) throw LoadError("corrupt parameter count");
  ParamSet p(n);
  for (auto& l : p) {
    l.weight = r.get_matrix();
    l.bias = r.get_vector();
  }
  return p;
}

}  // namespace

void write_mlp(BinaryWriter& w, const Mlp& net) {
  w.put<std::uint64_t>(net.layer_sizes().size());
  for (int s : net.layer_sizes()) w.put<std::int32_t>(s);
  w.put<std::int32_t>(static_cast<std::int32_t>(net.hidden_activation()));
  write_params(w, net.params());
}

Mlp read_mlp(BinaryReader& r) {
  const auto n = r.get<std::uint64_t>();
  if (n < 2 || n > 1024) throw LoadError("corrupt layer count");
  std::vector<int> sizes(n);
  for (auto& s : sizes) s = r.get<std::int32_t>();
  const auto act = r.get<std::int32_t>();
  if (act != 0 && act != 1) throw LoadError("unknown activation id");
  Mlp net;
  try {
    net = Mlp::Zeros(sizes, static_cast<Activation>(act));
  } catch (const ShapeError& e) {
    throw LoadError(std::string("corrupt layer sizes: ") + e.what());
  }
  ParamSet p = read_params(r);
  if (p.size() != net.params().size()) throw LoadError("layer count mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& want = net.params()[i];
    if (p[i].weight.rows() != want.weight.rows() || p[i].weight.cols() != want.weight.cols() ||
        p[i].bias.size() != want.bias.size()) {
      throw LoadError("parameter shape mismatch in layer " + std::to_string(i));
    }
  }
  net.params() = std::move(p);
  return net;
}

void write_adam(BinaryWriter& w, const AdamState& s) {
  w.put<double>(s.options_.learning_rate);
  w.put<double>(s.options_.beta1);
  w.put<double>(s.options_.beta2);
  w.put<double>(s.options_.epsilon);
  w.put<std::int64_t>(s.step_);
  write_params(w, s.first_);
  write_params(w, s.second_);
}

AdamState read_adam(BinaryReader& r) {
  AdamState s;
  s.options_.learning_rate = r.get<double>();
  s.options_.beta1 = r.get<double>();
  s.options_.beta2 = r.get<double>();
  s.options_.epsilon = r.get<double>();
  s.step_ = r.get<std::int64_t>();
  s.first_ = read_params(r);
  s.second_ = read_params(r);
  if (s.step_ < 0 || s.first_.size() != s.second_.size()) {
    throw LoadError("corrupt optimizer state");
  }
  return s;
}

}  // namespace purigan
