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

#include "CLI11.hpp"
#include "purigan/app/commands.hpp"
#include "purigan/errors.hpp"

namespace purigan::app {

namespace {

using Command = int (*)(const ExperimentConfig&, const CliOptions&, std::ostream&, std::ostream&);

void add_common(CLI::App* sub, CliOptions& opt, std::string& config, std::string& outdir,
                std::uint64_t& seed) {
  sub->add_option("--config", config, "Experiment config (JSON)");
  sub->add_option("--seed", seed, "Seed replacing every configured seed");
  sub->add_option("--jobs", opt.jobs, "Parallel runs (sweep)")->check(CLI::PositiveNumber);
  sub->add_flag("--force", opt.force, "Write into a non-empty output directory");
  sub->add_option("--out", outdir, "Output directory");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Purified GAN experiments on synthetic data"};
  app.require_subcommand(1);
  CliOptions opt;
  std::string config, outdir, policy;
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> verbs[] = {
      {"verify", "Check the convergence theorems on finite supports"},
      {"train", "Train one model and write checkpoint, history and plot"},
      {"sweep", "Train over a grid of settings and aggregate metrics"},
      {"tasks", "Anomaly detection and PU classification from a checkpoint"},
      {"contaminate", "Materialize a contaminated dataset"}};
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, opt, config, outdir, seed);
    if (std::string(name) == "verify") {
      sub->add_flag("--timings", opt.timings, "Record runtime_ms in verify.csv");
    }
    if (std::string(name) == "tasks") {
      sub->add_option("--policy", policy, "PU threshold policy")
          ->check(CLI::IsMember({"quantile", "fixed"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  auto* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();
  if (!config.empty()) opt.config = config;
  if (!outdir.empty()) opt.out = outdir;
  if (sub->count("--seed")) opt.seed = seed;
  if (!policy.empty()) opt.policy = policy;

  Command command = nullptr;
  if (verb == "verify") command = cmd_verify;
  if (verb == "train") command = cmd_train;
  if (verb == "sweep") command = cmd_sweep;
  if (verb == "tasks") command = cmd_tasks;
  if (verb == "contaminate") command = cmd_contaminate;

  try {
    ExperimentConfig cfg = opt.config ? load_config(*opt.config) : ExperimentConfig{};
    if (opt.seed) apply_seed(cfg, *opt.seed);
    if (opt.out) cfg.output.directory = opt.out->string();
    return command(cfg, opt, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace purigan::app
