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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "purigan/app/config.hpp"
#include "purigan/contamination.hpp"
#include "purigan/objectives.hpp"
#include "purigan/trainer.hpp"

namespace purigan::app {

// Creates the directory; a non-empty existing directory needs --force.
std::filesystem::path prepare_output(const ExperimentConfig& cfg, bool force);

// Writes config.json (the effective configuration) into dir.
void write_effective_config(const ExperimentConfig& cfg, const std::filesystem::path& dir);

// Objective for a dataset with the given true pi; warns about keys that the
// chosen variant ignores.
ObjectiveConfig resolve_objective(const ObjectiveSection& s, double dataset_pi,
                                  std::ostream& err);

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<HistoryRow>& history);

// Held-out evaluation sample: n target rows followed by n contamination rows,
// with labels 1 then 0.
struct LabeledSample {
  Points points;
  std::vector<std::uint8_t> labels;
};
LabeledSample labeled_sample(const Scenario& s, std::size_t n_per_class, Rng& rng);

std::string format_optional(const std::optional<double>& v);

}  // namespace purigan::app
