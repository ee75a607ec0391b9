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

#include <benchmark/benchmark.h>

#include "purigan/net.hpp"
#include "purigan/objectives.hpp"
#include "purigan/trainer.hpp"
#include "purigan/scenarios.hpp"

namespace {

using namespace purigan;

void BM_Forward(benchmark::State& state) {
  Rng rng(1);
  const int width = static_cast<int>(state.range(1));
  Mlp net({2, width, width, 1}, Activation::kLeakyRelu, rng);
  const Points x = Points::Random(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(forward(net, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Args({128, 64})->Args({384, 64})->Args({2000, 64})->Args({128, 256});

void BM_Gradients(benchmark::State& state) {
  Rng rng(2);
  const int width = static_cast<int>(state.range(1));
  Mlp net({2, width, width, 1}, Activation::kLeakyRelu, rng);
  const Points x = Points::Random(state.range(0), 2);
  const LossFn loss = [](const Eigen::MatrixXd& o) { return mean_squared_to(o, 1.0); };
  for (auto _ : state) benchmark::DoNotOptimize(gradients(net, x, loss));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Gradients)->Args({128, 64})->Args({384, 64})->Args({128, 256});

void BM_AdamStep(benchmark::State& state) {
  Rng rng(3);
  Mlp net({2, 64, 64, 1}, Activation::kLeakyRelu, rng);
  AdamState opt(net, {});
  ParamSet g = zeros_like(net.params());
  for (auto& l : g) l.weight.setConstant(1e-3);
  for (auto _ : state) optimizer_step(opt, net, g);
}
BENCHMARK(BM_AdamStep);

// 100 generator updates on the default disjoint task.
void BM_TrainSteps(benchmark::State& state) {
  Rng rng(4);
  const auto ds = make_dataset(disjoint_scenario(), 1200, 0.4, 0.2, rng);
  TrainConfig cfg;
  cfg.objective.pi = ds.pi();
  cfg.objective.variant = static_cast<Variant>(state.range(0));
  cfg.eval_every = 1000000;
  for (auto _ : state) {
    state.PauseTiming();
    auto s = init_state(cfg, 2);
    state.ResumeTiming();
    train_steps(s, ds.training_view(), nullptr, 100);
    benchmark::DoNotOptimize(s.step);
  }
}
BENCHMARK(BM_TrainSteps)
    ->Arg(static_cast<int>(Variant::kLsgan))
    ->Arg(static_cast<int>(Variant::kTwoLevel))
    ->Arg(static_cast<int>(Variant::kThreeLevel))
    ->Unit(benchmark::kMillisecond);

}  // namespace
