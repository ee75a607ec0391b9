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

#include "purigan/oracle.hpp"

namespace {

using namespace purigan;

void BM_ProjectToSimplex(benchmark::State& state) {
  Rng rng(1);
  std::normal_distribution<double> z;
  const Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(state.range(0), [&] { return z(rng); });
  for (auto _ : state) benchmark::DoNotOptimize(project_to_simplex(v));
}
BENCHMARK(BM_ProjectToSimplex)->Arg(4)->Arg(32)->Arg(1024);

void BM_VOfG(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto [pp, pm] = make_instance(k, SupportLayout::kOverlapping, 7);
  const ObjectiveConfig cfg{Variant::kThreeLevel, 1.0, 0.5, {}, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(v_of_g(pm, pp, pm, cfg));
}
BENCHMARK(BM_VOfG)->Arg(4)->Arg(32);

void BM_Minimize(benchmark::State& state) {
  const auto method = static_cast<SearchMethod>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto [pp, pm] = make_instance(k, SupportLayout::kOverlapping, 7);
  const ObjectiveConfig cfg{Variant::kThreeLevel, 1.0, 0.5, {}, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(minimize_v_g(pp, pm, cfg, method, 0.02));
}
BENCHMARK(BM_Minimize)
    ->Args({static_cast<int>(SearchMethod::kGrid), 3})
    ->Args({static_cast<int>(SearchMethod::kProjectedGradient), 3})
    ->Args({static_cast<int>(SearchMethod::kProjectedGradient), 16})
    ->Unit(benchmark::kMillisecond);

}  // namespace
