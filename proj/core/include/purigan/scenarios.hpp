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
#include <string>
#include <string_view>
#include <vector>

#include "purigan/contamination.hpp"
#include "purigan/distributions.hpp"

namespace purigan {

// A pair of ground-truth densities for the 2-D synthetic tasks.
struct Scenario {
  std::string name;
  AnalyticDensity target;
  AnalyticDensity contamination;
};

// Target modes at (-4, 4), (4, 4); contamination at (-4, -4), (4, -4);
// sigma 0.5 everywhere, so nearest cross-modes are 8 combined sigmas apart.
Scenario disjoint_scenario();

// Target N((2, 0), I) against contamination N((-2, 0), I).
Scenario pu_scenario();

// Looks a built-in scenario up by name ("disjoint", "pu").
Scenario builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();

// Draws `target_count` target points plus enough contamination to fill both
// the contaminated set and the negatives, then builds the dataset.
ContaminatedDataset make_dataset(const Scenario& s, std::size_t target_count,
                                 double gamma_p, double gamma_c, Rng& rng);

// Fraction of points within `sigmas` Mahalanobis units of any component mean.
double fraction_near_modes(const Points& points, const AnalyticDensity& density,
                           double sigmas = 3.0);

}  // namespace purigan
