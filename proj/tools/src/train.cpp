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
#include "purigan/app/svg.hpp"
#include "purigan/io.hpp"
#include "purigan/metrics.hpp"
#include "purigan/scenarios.hpp"
#include "purigan/tasks.hpp"

namespace purigan::app {

namespace {

Rng evaluation_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x7e57u};
  return Rng(seq);
}

Points head(const Points& p, std::size_t n) {
  return p.topRows(std::min<Eigen::Index>(p.rows(), static_cast<Eigen::Index>(n)));
}

}  // namespace

int cmd_train(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
              std::ostream& err) {
  const auto dir = prepare_output(cfg, opt.force);
  write_effective_config(cfg, dir);
  const Scenario scenario = cfg.distributions.resolve();
  Rng data_rng(cfg.contamination.seed);
  const auto ds = make_dataset(scenario, cfg.contamination.target_count,
                               cfg.contamination.gamma_p, cfg.contamination.gamma_c, data_rng);
  const ObjectiveConfig objective = resolve_objective(cfg.objective, ds.pi(), err);
  TrainConfig tc = cfg.train.resolve(objective);
  tc.checkpoint_path = dir / "checkpoint.bin";
  try {
    tc.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("train: ") + e.what());
  }

  TrainState state;
  try {
    state = train(tc, ds.training_view(), &scenario.target);
  } catch (const TrainingAborted& e) {
    write_history_csv(dir / "history.csv", e.last_good().history);
    err << "error: " << e.what() << "\n";
    if (e.checkpoint()) err << "last good checkpoint: " << e.checkpoint()->string() << "\n";
    return kExitFailure;
  }
  save_checkpoint(state, dir / "checkpoint.bin");
  write_history_csv(dir / "history.csv", state.history);

  Rng rng = evaluation_rng(tc.seed);
  const Points generated = generate(state, tc.eval_samples, rng);
  const auto held = labeled_sample(scenario, tc.eval_samples, rng);
  const auto scores = discriminator_scores(state.discriminator, held.points);
  const double auc = auroc(scores, held.labels);
  const HistoryRow& last = state.history.back();

  io::CsvWriter csv(dir / "final_metrics.csv");
  csv.header({"metric", "value"});
  auto row = [&](std::string_view name, double v) {
    csv.field(name).field(v);
    csv.end_row();
  };
  row("step", static_cast<double>(state.step));
  row("frechet", last.frechet);
  row("mmd", last.mmd);
  row("fraction_near_target", fraction_near_modes(generated, scenario.target));
  row("fraction_near_contamination", fraction_near_modes(generated, scenario.contamination));
  row("discriminator_auroc", auc);
  row("pi", *objective.pi);
  if (objective.variant == Variant::kTwoLevel) row("lambda", objective.lambda);
  if (objective.variant == Variant::kThreeLevel) row("d", objective.resolved_d());
  csv.close();

  if (cfg.output.svg) {
    if (generated.cols() >= 2) {
      const std::size_t n = cfg.output.svg_points;
      const auto t = static_cast<Eigen::Index>(tc.eval_samples);
      write_scatter_svg(dir / "samples.svg",
                        std::string(to_string(objective.variant)) + " generated samples",
                        {{"target", "#1f77b4", head(held.points.topRows(t), n)},
                         {"contamination", "#d62728", head(held.points.bottomRows(t), n)},
                         {"generated", "#222222", head(generated, n)}});
    } else {
      err << "warning: data is 1-D; samples.svg skipped\n";
    }
  }
  out << "trained " << to_string(objective.variant) << " for " << state.step
      << " generator steps: frechet " << io::format_double(last.frechet) << ", mmd "
      << io::format_double(last.mmd) << "\n";
  return kExitOk;
}

int cmd_contaminate(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
                    std::ostream&) {
  const auto dir = prepare_output(cfg, opt.force);
  write_effective_config(cfg, dir);
  const Scenario scenario = cfg.distributions.resolve();
  Rng rng(cfg.contamination.seed);
  const auto ds = make_dataset(scenario, cfg.contamination.target_count,
                               cfg.contamination.gamma_p, cfg.contamination.gamma_c, rng);
  save_dataset(ds, dir);
  io::CsvWriter csv(dir / "summary.csv");
  csv.header({"mixed", "target", "contamination", "negatives", "gamma_p", "gamma_c", "pi"});
  csv.field(static_cast<long long>(ds.mixed().rows()))
      .field(static_cast<long long>(ds.mixed().rows()) -
             static_cast<long long>(ds.contamination_count()))
      .field(ds.contamination_count())
      .field(static_cast<long long>(ds.negatives().rows()))
      .field(ds.gamma_p())
      .field(ds.gamma_c())
      .field(ds.pi());
  csv.end_row();
  csv.close();
  out << "wrote " << ds.mixed().rows() << " mixed and " << ds.negatives().rows()
      << " negative points to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace purigan::app
