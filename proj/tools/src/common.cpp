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

#include "common.hpp"

#include <fstream>
#include <ostream>

#include "purigan/io.hpp"

namespace purigan::app {

std::filesystem::path prepare_output(const ExperimentConfig& cfg, bool force) {
  const std::filesystem::path dir(cfg.output.directory);
  if (std::filesystem::exists(dir)) {
    if (!std::filesystem::is_directory(dir)) {
      throw ConfigError("output path exists and is not a directory: " + dir.string());
    }
    if (!std::filesystem::is_empty(dir) && !force) {
      throw ConfigError("output directory is not empty (use --force): " + dir.string());
    }
  }
  std::filesystem::create_directories(dir);
  return dir;
}

void write_effective_config(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  std::ofstream out(dir / "config.json", std::ios::binary | std::ios::trunc);
  out << dump_config(cfg);
  if (!out) throw std::runtime_error("cannot write " + (dir / "config.json").string());
}

ObjectiveConfig resolve_objective(const ObjectiveSection& s, double dataset_pi,
                                  std::ostream& err) {
  if (s.variant != Variant::kTwoLevel && s.lambda_given) {
    err << "warning: objective.lambda is ignored for variant " << to_string(s.variant) << "\n";
  }
  if (s.variant != Variant::kThreeLevel && s.d) {
    err << "warning: objective.d is ignored for variant " << to_string(s.variant) << "\n";
  }
  ObjectiveConfig o = s.resolve(dataset_pi);
  try {
    o.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("objective: ") + e.what());
  }
  return o;
}

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<HistoryRow>& history) {
  io::CsvWriter csv(path);
  csv.header({"step", "d_loss", "g_loss", "frechet", "mmd"});
  for (const auto& h : history) {
    csv.field(h.step).field(h.d_loss).field(h.g_loss).field(h.frechet).field(h.mmd);
    csv.end_row();
  }
  csv.close();
}

LabeledSample labeled_sample(const Scenario& s, std::size_t n_per_class, Rng& rng) {
  const Points target = sample(s.target, rng, n_per_class);
  const Points contamination = sample(s.contamination, rng, n_per_class);
  LabeledSample out;
  out.points.resize(target.rows() + contamination.rows(), target.cols());
  out.points << target, contamination;
  out.labels.assign(static_cast<std::size_t>(out.points.rows()), 0);
  std::fill(out.labels.begin(), out.labels.begin() + target.rows(), 1);
  return out;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string("auto");
}

}  // namespace purigan::app
