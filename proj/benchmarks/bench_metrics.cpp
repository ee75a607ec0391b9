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

#include <vector>

#include "purigan/metrics.hpp"

namespace {

using namespace purigan;

Points Normal(Rng& rng, Eigen::Index n, Eigen::Index d) {
  std::normal_distribution<double> z;
  return Points::NullaryExpr(n, d, [&] { return z(rng); });
}

void BM_Frechet(benchmark::State& state) {
  Rng rng(1);
  const Points a = Normal(rng, state.range(0), state.range(1));
  const Points b = Normal(rng, state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(frechet_gaussian(a, b));
}
BENCHMARK(BM_Frechet)->Args({2000, 2})->Args({2000, 16})->Args({2000, 64});

void BM_Mmd(benchmark::State& state) {
  Rng rng(2);
  const Points a = Normal(rng, state.range(0), 2);
  const Points b = Normal(rng, state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mmd_rbf(a, b, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Mmd)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_MedianBandwidth(benchmark::State& state) {
  Rng rng(3);
  const Points a = Normal(rng, 500, 2);
  const Points b = Normal(rng, 500, 2);
  for (auto _ : state) benchmark::DoNotOptimize(median_bandwidth(a, b));
}
BENCHMARK(BM_MedianBandwidth);

void BM_Auroc(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> s(n);
  std::vector<std::uint8_t> y(n);
  std::uniform_real_distribution<double> u;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = u(rng);
    y[i] = static_cast<std::uint8_t>(i % 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(auroc(s, y));
}
BENCHMARK(BM_Auroc)->Arg(4000)->Arg(100000);

}  // namespace
