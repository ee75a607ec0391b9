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

#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "common.hpp"
#include "purigan/app/commands.hpp"
#include "purigan/io.hpp"
#include "purigan/metrics.hpp"
#include "purigan/scenarios.hpp"
#include "purigan/tasks.hpp"

namespace purigan::app {

namespace {

struct Cell {
  double gamma_p = 0.0;
  double gamma_c = 0.0;
  std::optional<double> pi;
  Variant variant = Variant::kTwoLevel;
};

struct Run {
  std::size_t cell = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double pi = 0.0;
  double frechet = std::nan("");
  double mmd = std::nan("");
  double auroc = std::nan("");
};

struct Stat {
  double mean = std::nan("");
  double std = std::nan("");
};

Stat summarize(const std::vector<double>& v) {
  Stat s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return s;
}

std::string cell_dir_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "cell_%03zu", i);
  return buf;
}

void execute(Run& run, const Cell& cell, const ExperimentConfig& cfg, const Scenario& scenario,
             const std::filesystem::path& dir) {
  ObjectiveSection os = cfg.objective;
  os.variant = cell.variant;
  os.pi = cell.pi;
  std::ostringstream ignored;  // warnings are reported once, up front
  const std::uint64_t data_seed = cfg.contamination.seed + static_cast<std::uint64_t>(run.replicate);
  Rng rng(data_seed);
  const auto ds =
      make_dataset(scenario, cfg.contamination.target_count, cell.gamma_p, cell.gamma_c, rng);
  const ObjectiveConfig objective = resolve_objective(os, ds.pi(), ignored);
  TrainConfig tc = cfg.train.resolve(objective);
  tc.seed = run.seed;
  run.pi = *objective.pi;
  const TrainState state = train(tc, ds.training_view(), &scenario.target);
  write_history_csv(dir / "history.csv", state.history);
  run.frechet = state.history.back().frechet;
  run.mmd = state.history.back().mmd;
  const auto held = labeled_sample(scenario, cfg.sweep.eval_points, rng);
  run.auroc = auroc(discriminator_scores(state.discriminator, held.points), held.labels);
  run.ok = true;
}

}  // namespace

int cmd_sweep(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
              std::ostream& err) {
  const auto& sw = cfg.sweep;
  const std::vector<double> gps = sw.gamma_p_given ? sw.gamma_p
                                                   : std::vector<double>{cfg.contamination.gamma_p};
  const std::vector<double> gcs = sw.gamma_c_given ? sw.gamma_c
                                                   : std::vector<double>{cfg.contamination.gamma_c};
  const std::vector<std::optional<double>> pis =
      sw.pi_given ? sw.pi : std::vector<std::optional<double>>{cfg.objective.pi};
  const std::vector<Variant> variants =
      sw.variants_given ? sw.variants : std::vector<Variant>{cfg.objective.variant};
  if (gps.empty() || gcs.empty() || pis.empty() || variants.empty()) {
    throw ConfigError("sweep: lists must not be empty");
  }
  if (opt.jobs < 1) throw ConfigError("--jobs must be at least 1");

  std::vector<Cell> cells;
  for (double gp : gps)
    for (double gc : gcs)
      for (const auto& pi : pis)
        for (Variant v : variants) cells.push_back({gp, gc, pi, v});

  // Validate every cell's objective and report ignored keys once.
  for (Variant v : variants) {
    ObjectiveSection os = cfg.objective;
    os.variant = v;
    resolve_objective(os, 1.0 - gps.front(), err);
  }
  try {
    cfg.train.resolve(cfg.objective.resolve(1.0 - gps.front())).validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("train: ") + e.what());
  }

  const auto dir = prepare_output(cfg, opt.force);
  write_effective_config(cfg, dir);
  const Scenario scenario = cfg.distributions.resolve();

  std::vector<Run> runs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int r = 0; r < sw.replicates; ++r) {
      Run run;
      run.cell = c;
      run.replicate = r;
      run.seed = cfg.train.seed + static_cast<std::uint64_t>(r);
      runs.push_back(run);
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      Run& run = runs[i];
      const auto run_dir =
          dir / "cells" / cell_dir_name(run.cell) / ("rep_" + std::to_string(run.replicate));
      try {
        std::filesystem::create_directories(run_dir);
        execute(run, cells[run.cell], cfg, scenario, run_dir);
      } catch (const std::exception& e) {
        run.ok = false;
        run.error = e.what();
        std::lock_guard<std::mutex> lock(log_mutex);
        err << "error: cell " << run.cell << " replicate " << run.replicate << ": " << e.what()
            << "\n";
      }
    }
  };
  const int n_threads = std::min<int>(opt.jobs, static_cast<int>(runs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  io::CsvWriter rcsv(dir / "runs.csv");
  rcsv.header({"cell", "gamma_p", "gamma_c", "pi_assumed", "pi_used", "variant", "replicate",
               "seed", "status", "frechet", "mmd", "auroc"});
  for (const auto& r : runs) {
    const Cell& c = cells[r.cell];
    rcsv.field(r.cell)
        .field(c.gamma_p)
        .field(c.gamma_c)
        .field(format_optional(c.pi))
        .field(r.pi)
        .field(to_string(c.variant))
        .field(r.replicate)
        .field(static_cast<long long>(r.seed))
        .field(r.ok ? "ok" : "failed")
        .field(r.frechet)
        .field(r.mmd)
        .field(r.auroc);
    rcsv.end_row();
  }
  rcsv.close();

  io::CsvWriter csv(dir / "sweep.csv");
  csv.header({"cell", "gamma_p", "gamma_c", "pi_assumed", "variant", "runs", "failed",
              "frechet_mean", "frechet_std", "mmd_mean", "mmd_std", "auroc_mean", "auroc_std"});
  std::size_t failed_total = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> fr, mm, au;
    std::size_t failed = 0;
    for (const auto& r : runs) {
      if (r.cell != c) continue;
      if (!r.ok) {
        ++failed;
        continue;
      }
      fr.push_back(r.frechet);
      mm.push_back(r.mmd);
      au.push_back(r.auroc);
    }
    failed_total += failed;
    const Stat f = summarize(fr), m = summarize(mm), a = summarize(au);
    csv.field(c)
        .field(cells[c].gamma_p)
        .field(cells[c].gamma_c)
        .field(format_optional(cells[c].pi))
        .field(to_string(cells[c].variant))
        .field(static_cast<long long>(sw.replicates))
        .field(failed)
        .field(f.mean)
        .field(f.std)
        .field(m.mean)
        .field(m.std)
        .field(a.mean)
        .field(a.std);
    csv.end_row();
  }
  csv.close();
  out << "sweep: " << cells.size() << " cells, " << runs.size() << " runs, " << failed_total
      << " failed\n";
  return failed_total == 0 ? kExitOk : kExitFailure;
}

}  // namespace purigan::app
