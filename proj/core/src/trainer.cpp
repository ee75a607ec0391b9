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

#include "purigan/trainer.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <span>
#include <sstream>

#include "purigan/errors.hpp"
#include "purigan/metrics.hpp"
#include "purigan/serialize.hpp"

namespace purigan {

namespace {

constexpr char kMagic[8] = {'P', 'G', 'A', 'N', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

std::span<const double> column(const Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.rows())};
}

Points standard_normal(std::size_t rows, Eigen::Index cols, Rng& rng) {
  // A fresh distribution per call: no cached deviate outlives the call, so
  // the engine state alone determines every later draw.
  std::normal_distribution<double> normal(0.0, 1.0);
  Points z(static_cast<Eigen::Index>(rows), cols);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = normal(rng);
  }
  return z;
}

std::vector<int> shape(int in, int hidden, int layers, int out) {
  std::vector<int> s{in};
  for (int i = 0; i < layers; ++i) s.push_back(hidden);
  s.push_back(out);
  return s;
}

// Stacks the parts of one discriminator batch so a single pass covers all.
Points stack(const Points& a, const Points& b, const Points* c) {
  Points out(a.rows() + b.rows() + (c ? c->rows() : 0), a.cols());
  out.topRows(a.rows()) = a;
  out.middleRows(a.rows(), b.rows()) = b;
  if (c) out.bottomRows(c->rows()) = *c;
  return out;
}

// Adds w * d/d(out) mean((out - target)^2) for rows [begin, begin + n).
void add_mse_grad(Eigen::MatrixXd& d_out, const Eigen::MatrixXd& out, Eigen::Index begin,
                  Eigen::Index n, double target, double w) {
  const double scale = 2.0 * w / static_cast<double>(n);
  d_out.middleRows(begin, n) = scale * (out.middleRows(begin, n).array() - target).matrix();
}

struct StepLosses {
  double d_loss = 0.0;
  double g_loss = 0.0;
};

bool use_negatives(const ObjectiveConfig& obj, const TrainingView& data) {
  return obj.requires_negatives() && data.negatives().rows() > 0;
}

double discriminator_step(TrainState& s, const TrainingView& data) {
  const auto& cfg = s.config;
  const auto& obj = cfg.objective;
  const bool neg = use_negatives(obj, data);
  const Points real = minibatch(data, Part::kMixed, cfg.batch_size, s.rng);
  const Points fake =
      forward(s.generator, standard_normal(cfg.batch_size, cfg.latent_dim, s.rng));
  Points negatives;
  if (neg) negatives = minibatch(data, Part::kNegatives, cfg.batch_size, s.rng);

  const Points batch = stack(real, fake, neg ? &negatives : nullptr);
  const ForwardTrace trace = forward_trace(s.discriminator, batch);
  const Eigen::MatrixXd& out = trace.output();
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.batch_size);

  const Eigen::MatrixXd out_real = out.topRows(n);
  const Eigen::MatrixXd out_fake = out.middleRows(n, n);
  const Eigen::MatrixXd out_neg = neg ? Eigen::MatrixXd(out.bottomRows(n)) : Eigen::MatrixXd();
  const double loss =
      discriminator_loss(obj, column(out_real), column(out_fake), column(out_neg));

  Eigen::MatrixXd d_out(out.rows(), 1);
  add_mse_grad(d_out, out, 0, n, 1.0, 1.0);
  add_mse_grad(d_out, out, n, n, 0.0, 1.0);
  if (neg) add_mse_grad(d_out, out, 2 * n, n, obj.negative_target(), obj.negative_weight());
  const auto grads = backward(s.discriminator, trace, d_out, true).grads;
  optimizer_step(s.d_opt, s.discriminator, grads);
  return loss;
}

double generator_step(TrainState& s, const TrainingView& data) {
  const auto& cfg = s.config;
  const auto& obj = cfg.objective;
  const double c = obj.generator_target();
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.batch_size);

  const Points z = standard_normal(cfg.batch_size, cfg.latent_dim, s.rng);
  const ForwardTrace g_trace = forward_trace(s.generator, z);
  const ForwardTrace d_trace = forward_trace(s.discriminator, g_trace.output());
  const Eigen::MatrixXd out_fake = d_trace.output();

  // The data and negative terms carry no generator dependence; they are
  // evaluated for the logged loss only.
  const Points real = minibatch(data, Part::kMixed, cfg.batch_size, s.rng);
  const Eigen::MatrixXd out_real = forward(s.discriminator, real);
  Eigen::MatrixXd out_neg;
  if (use_negatives(obj, data)) {
    out_neg = forward(s.discriminator, minibatch(data, Part::kNegatives, cfg.batch_size, s.rng));
  }
  const double loss = generator_loss(obj, column(out_real), column(out_fake), column(out_neg));

  Eigen::MatrixXd d_out(n, 1);
  add_mse_grad(d_out, out_fake, 0, n, c, 1.0);
  const Eigen::MatrixXd d_samples =
      backward(s.discriminator, d_trace, d_out, false).d_input;
  const auto grads = backward(s.generator, g_trace, d_samples, true).grads;
  optimizer_step(s.g_opt, s.generator, grads);
  return loss;
}

HistoryRow evaluate_row(const TrainState& s, const AnalyticDensity* target,
                        const StepLosses& losses) {
  HistoryRow row;
  row.step = s.step;
  row.d_loss = losses.d_loss;
  row.g_loss = losses.g_loss;
  row.frechet = std::numeric_limits<double>::quiet_NaN();
  row.mmd = std::numeric_limits<double>::quiet_NaN();
  if (target) {
    const auto e = evaluate_generator(s.generator, *target, s.config.eval_samples,
                                      s.config.mmd_samples, s.config.seed,
                                      static_cast<std::uint64_t>(s.step));
    row.frechet = e.frechet;
    row.mmd = e.mmd;
  }
  return row;
}

std::string rng_text(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng rng_from_text(const std::string& text) {
  std::istringstream is(text);
  Rng rng;
  is >> rng;
  if (is.fail()) throw LoadError("corrupt generator state");
  return rng;
}

void write_config(BinaryWriter& w, const TrainConfig& c) {
  w.put<std::int32_t>(static_cast<std::int32_t>(c.objective.variant));
  w.put<double>(c.objective.lambda);
  w.put<double>(c.objective.c);
  w.put<std::uint8_t>(c.objective.d ? 1 : 0);
  w.put<double>(c.objective.d.value_or(0.0));
  w.put<std::uint8_t>(c.objective.pi ? 1 : 0);
  w.put<double>(c.objective.pi.value_or(0.0));
  w.put<std::int32_t>(c.latent_dim);
  w.put<std::int32_t>(c.hidden_units);
  w.put<std::int32_t>(c.hidden_layers);
  w.put<std::uint64_t>(c.batch_size);
  w.put<std::int32_t>(c.d_steps_per_g_step);
  w.put<std::int64_t>(c.total_g_steps);
  w.put<double>(c.lr_g);
  w.put<double>(c.lr_d);
  w.put<double>(c.beta1);
  w.put<double>(c.beta2);
  w.put<std::int64_t>(c.eval_every);
  w.put<std::uint64_t>(c.eval_samples);
  w.put<std::uint64_t>(c.mmd_samples);
  w.put<std::uint64_t>(c.seed);
  w.put_string(c.checkpoint_path ? c.checkpoint_path->string() : std::string());
}

TrainConfig read_config(BinaryReader& r) {
  TrainConfig c;
  const auto variant = r.get<std::int32_t>();
  if (variant < 0 || variant > 2) throw LoadError("unknown objective variant in checkpoint");
  c.objective.variant = static_cast<Variant>(variant);
  c.objective.lambda = r.get<double>();
  c.objective.c = r.get<double>();
  const bool has_d = r.get<std::uint8_t>() != 0;
  const double d = r.get<double>();
  if (has_d) c.objective.d = d;
  const bool has_pi = r.get<std::uint8_t>() != 0;
  const double pi = r.get<double>();
  if (has_pi) c.objective.pi = pi;
  c.latent_dim = r.get<std::int32_t>();
  c.hidden_units = r.get<std::int32_t>();
  c.hidden_layers = r.get<std::int32_t>();
  c.batch_size = r.get<std::uint64_t>();
  c.d_steps_per_g_step = r.get<std::int32_t>();
  c.total_g_steps = r.get<std::int64_t>();
  c.lr_g = r.get<double>();
  c.lr_d = r.get<double>();
  c.beta1 = r.get<double>();
  c.beta2 = r.get<double>();
  c.eval_every = r.get<std::int64_t>();
  c.eval_samples = r.get<std::uint64_t>();
  c.mmd_samples = r.get<std::uint64_t>();
  c.seed = r.get<std::uint64_t>();
  const std::string path = r.get_string();
  if (!path.empty()) c.checkpoint_path = path;
  return c;
}

}  // namespace

void TrainConfig::validate() const {
  objective.validate();
  if (latent_dim < 1 || hidden_units < 1 || hidden_layers < 0) {
    throw ArgumentError("network sizes must be positive");
  }
  if (batch_size < 1) throw ArgumentError("batch_size must be positive");
  if (d_steps_per_g_step < 1) throw ArgumentError("d_steps_per_g_step must be positive");
  if (total_g_steps < 1) throw ArgumentError("total_g_steps must be positive");
  if (eval_every < 1) throw ArgumentError("eval_every must be positive");
  if (!(lr_g > 0.0) || !(lr_d > 0.0)) throw ArgumentError("learning rates must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ArgumentError("Adam betas must lie in [0, 1)");
  }
  if (eval_samples < 2 || mmd_samples < 2) {
    throw ArgumentError("evaluation needs at least two samples");
  }
}

TrainState init_state(const TrainConfig& cfg, Eigen::Index data_dim) {
  cfg.validate();
  if (data_dim < 1) throw ShapeError("data dimension must be positive");
  TrainState s;
  s.config = cfg;
  s.rng = Rng(cfg.seed);
  const int dim = static_cast<int>(data_dim);
  s.generator = Mlp(shape(cfg.latent_dim, cfg.hidden_units, cfg.hidden_layers, dim),
                    Activation::kTanh, s.rng);
  s.discriminator = Mlp(shape(dim, cfg.hidden_units, cfg.hidden_layers, 1),
                        Activation::kLeakyRelu, s.rng);
  AdamOptions g{cfg.lr_g, cfg.beta1, cfg.beta2, 1e-8};
  AdamOptions d{cfg.lr_d, cfg.beta1, cfg.beta2, 1e-8};
  s.g_opt = AdamState(s.generator, g);
  s.d_opt = AdamState(s.discriminator, d);
  return s;
}

void train_steps(TrainState& s, const TrainingView& data, const AnalyticDensity* eval_target,
                 long long g_steps) {
  const auto& cfg = s.config;
  if (data.mixed().rows() == 0) throw CapacityError("mixed dataset is empty");
  if (data.dimension() != s.discriminator.input_dim()) {
    throw ShapeError("data dimension does not match the discriminator");
  }
  if (cfg.objective.requires_negatives() && data.negatives().rows() == 0) {
    throw CapacityError(std::string(to_string(cfg.objective.variant)) +
                        " training needs negatives");
  }
  if (eval_target && eval_target->dimension() != data.dimension()) {
    throw ShapeError("evaluation target dimension does not match the data");
  }
  const long long end = std::min(cfg.total_g_steps, s.step + std::max(0LL, g_steps));
  TrainState last_good = s;
  while (s.step < end) {
    StepLosses losses;
    try {
      for (int k = 0; k < cfg.d_steps_per_g_step; ++k) losses.d_loss = discriminator_step(s, data);
      losses.g_loss = generator_step(s, data);
      if (!std::isfinite(losses.d_loss) || !std::isfinite(losses.g_loss)) {
        throw NumericError("non-finite loss");
      }
    } catch (const NumericError& e) {
      const long long failed = s.step + 1;
      if (cfg.checkpoint_path) save_checkpoint(last_good, *cfg.checkpoint_path);
      throw TrainingAborted("training aborted at step " + std::to_string(failed) + ": " +
                                e.what(),
                            failed, std::move(last_good), cfg.checkpoint_path);
    }
    ++s.step;
    if (s.step % cfg.eval_every == 0 || s.step == cfg.total_g_steps) {
      s.history.push_back(evaluate_row(s, eval_target, losses));
      last_good = s;
    }
  }
}

TrainState train(const TrainConfig& cfg, const TrainingView& data,
                 const AnalyticDensity* eval_target) {
  TrainState s = init_state(cfg, data.dimension());
  train_steps(s, data, eval_target, cfg.total_g_steps);
  return s;
}

Points generate(const Mlp& generator, std::size_t n, Rng& rng) {
  if (n < 1) throw ArgumentError("n must be at least 1");
  return forward(generator, standard_normal(n, generator.input_dim(), rng));
}

Points generate(const TrainState& state, std::size_t n, Rng& rng) {
  return generate(state.generator, n, rng);
}

Evaluation evaluate_generator(const Mlp& generator, const AnalyticDensity& target,
                              std::size_t n, std::size_t mmd_n, std::uint64_t seed,
                              std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                    0x9e3779b9u};
  Rng rng(seq);
  const Points gen = generate(generator, n, rng);
  const Points ref = sample(target, rng, n);
  Evaluation e;
  e.frechet = frechet_gaussian(gen, ref);
  const auto m = static_cast<Eigen::Index>(std::min(mmd_n, n));
  const Points gm = gen.topRows(m);
  const Points rm = ref.topRows(m);
  e.mmd = mmd_rbf(gm, rm, median_bandwidth(gm, rm));
  return e;
}

std::string encode_checkpoint(const TrainState& s) {
  BinaryWriter w;
  write_config(w, s.config);
  write_mlp(w, s.generator);
  write_mlp(w, s.discriminator);
  write_adam(w, s.g_opt);
  write_adam(w, s.d_opt);
  w.put<std::int64_t>(s.step);
  w.put_string(rng_text(s.rng));
  w.put<std::uint64_t>(s.history.size());
  for (const auto& h : s.history) {
    w.put<std::int64_t>(h.step);
    w.put<double>(h.d_loss);
    w.put<double>(h.g_loss);
    w.put<double>(h.frechet);
    w.put<double>(h.mmd);
  }
  const std::string& payload = w.data();
  BinaryWriter file;
  for (char ch : kMagic) file.put<char>(ch);
  file.put<std::uint32_t>(kVersion);
  file.put<std::uint64_t>(payload.size());
  file.put<std::uint64_t>(fnv1a64(payload));
  std::string out = file.data();
  out += payload;
  return out;
}

TrainState decode_checkpoint(std::string_view bytes) {
  BinaryReader head(bytes);
  for (char ch : kMagic) {
    if (head.get<char>() != ch) throw LoadError("not a checkpoint file (bad magic)");
  }
  const auto version = head.get<std::uint32_t>();
  if (version != kVersion) {
    throw LoadError("unsupported checkpoint version " + std::to_string(version) +
                    " (expected " + std::to_string(kVersion) + ")");
  }
  const auto size = head.get<std::uint64_t>();
  const auto checksum = head.get<std::uint64_t>();
  constexpr std::size_t kHeader = sizeof(kMagic) + 4 + 8 + 8;
  if (bytes.size() - kHeader != size) {
    throw LoadError("checkpoint is truncated or has trailing data (payload " +
                    std::to_string(bytes.size() - kHeader) + " of " + std::to_string(size) +
                    " bytes)");
  }
  const std::string_view payload = bytes.substr(kHeader);
  if (fnv1a64(payload) != checksum) throw LoadError("checkpoint checksum mismatch");

  BinaryReader r(payload);
  TrainState s;
  s.config = read_config(r);
  s.generator = read_mlp(r);
  s.discriminator = read_mlp(r);
  s.g_opt = read_adam(r);
  s.d_opt = read_adam(r);
  s.step = r.get<std::int64_t>();
  s.rng = rng_from_text(r.get_string());
  const auto rows = r.get<std::uint64_t>();
  if (rows > payload.size()) throw LoadError("corrupt history length");
  s.history.resize(rows);
  for (auto& h : s.history) {
    h.step = r.get<std::int64_t>();
    h.d_loss = r.get<double>();
    h.g_loss = r.get<double>();
    h.frechet = r.get<double>();
    h.mmd = r.get<double>();
  }
  if (!r.at_end()) throw LoadError("unexpected trailing bytes in checkpoint payload");
  return s;
}

void save_checkpoint(const TrainState& state, const std::filesystem::path& path) {
  const std::string bytes = encode_checkpoint(state);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing checkpoint: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

TrainState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_checkpoint(buf.str());
}

}  // namespace purigan
