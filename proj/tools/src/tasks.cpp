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

#include <ostream>

#include "common.hpp"
#include "purigan/app/commands.hpp"
#include "purigan/errors.hpp"
#include "purigan/io.hpp"
#include "purigan/metrics.hpp"
#include "purigan/tasks.hpp"

namespace purigan::app {

int cmd_tasks(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
              std::ostream& err) {
  const auto& tk = cfg.tasks;
  if (!tk.checkpoint) throw ConfigError("tasks.checkpoint is required");
  if (!std::filesystem::exists(*tk.checkpoint)) {
    throw ConfigError("checkpoint not found: " + *tk.checkpoint);
  }
  const std::string policy_name = opt.policy.value_or(tk.policy);
  ThresholdPolicy policy;
  if (policy_name == "fixed") {
    policy = ThresholdPolicy::Fixed(tk.threshold);
  } else if (policy_name == "quantile") {
    const std::optional<double> pi = tk.pi ? tk.pi : cfg.objective.pi;
    if (!pi) throw ConfigError("quantile policy needs pi (tasks.pi or objective.pi)");
    policy = ThresholdPolicy::Quantile(*pi);
  } else {
    throw ConfigError("unknown policy: " + policy_name);
  }

  TrainState state;
  try {
    state = load_checkpoint(*tk.checkpoint);
  } catch (const LoadError& e) {
    throw ConfigError(std::string("cannot load checkpoint: ") + e.what());
  }

  Points points;
  std::optional<std::vector<std::uint8_t>> labels;
  if (tk.points) {
    points = io::read_points_csv(*tk.points);
    if (!tk.labels) {
      err << "warning: no label file configured; metrics skipped\n";
    } else if (!std::filesystem::exists(*tk.labels)) {
      err << "warning: label file not found (" << *tk.labels << "); metrics skipped\n";
    } else {
      labels = io::read_labels_csv(*tk.labels);
      if (labels->size() != static_cast<std::size_t>(points.rows())) {
        throw ConfigError("label count does not match the number of points");
      }
    }
  } else {
    Rng rng(tk.seed);
    auto held = labeled_sample(cfg.distributions.resolve(), tk.eval_points, rng);
    points = std::move(held.points);
    labels = std::move(held.labels);
  }
  if (points.cols() != state.discriminator.input_dim()) {
    throw ConfigError("evaluation points do not match the checkpoint's data dimension");
  }

  const auto dir = prepare_output(cfg, opt.force);
  write_effective_config(cfg, dir);
  auto scored = anomaly_scores(state.discriminator, points);
  apply_threshold(scored, policy);

  io::CsvWriter scsv(dir / "scores.csv");
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < points.cols(); ++j) header.push_back("x" + std::to_string(j + 1));
  header.insert(header.end(), {"score", "label_pred"});
  if (labels) header.push_back("label_true");
  scsv.header(header);
  std::vector<std::uint8_t> predictions;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) scsv.field(scored[i].point(j));
    scsv.field(scored[i].score).field(static_cast<int>(*scored[i].predicted_label));
    if (labels) scsv.field(static_cast<int>((*labels)[i]));
    scsv.end_row();
    predictions.push_back(*scored[i].predicted_label);
  }
  scsv.close();

  if (!labels) {
    out << "scored " << scored.size() << " points (no labels, metrics skipped)\n";
    return kExitOk;
  }
  std::vector<double> scores;
  for (const auto& s : scored) scores.push_back(s.score);
  io::CsvWriter mcsv(dir / "metrics.csv");
  mcsv.header({"task", "metric", "value"});
  double auc = std::nan("");
  try {
    auc = auroc(scores, *labels);
  } catch (const ArgumentError& e) {
    err << "warning: AUROC undefined: " << e.what() << "\n";
  }
  mcsv.field("anomaly").field("auroc").field(auc);
  mcsv.end_row();
  const auto fa = f1_accuracy(predictions, *labels);
  const char* pu = policy_name == "fixed" ? "pu_fixed" : "pu_quantile";
  mcsv.field(pu).field("f1").field(fa.f1);
  mcsv.end_row();
  mcsv.field(pu).field("accuracy").field(fa.accuracy);
  mcsv.end_row();
  mcsv.field(pu).field("precision").field(fa.precision);
  mcsv.end_row();
  mcsv.field(pu).field("recall").field(fa.recall);
  mcsv.end_row();
  mcsv.close();
  out << "auroc " << io::format_double(auc) << ", f1 " << io::format_double(fa.f1)
      << ", accuracy " << io::format_double(fa.accuracy) << "\n";
  return kExitOk;
}

}  // namespace purigan::app
