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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "purigan/app/config.hpp"

namespace purigan::app {

// Exit statuses shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CliOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool force = false;
  std::optional<std::filesystem::path> out;
  bool timings = false;                // verify: fill runtime_ms
  std::optional<std::string> policy;   // tasks: overrides tasks.policy
};

// Each command writes its artifacts under cfg.output.directory and returns
// an exit status. ConfigError propagates to the caller (status 2).
int cmd_verify(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
               std::ostream& err);
int cmd_train(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
              std::ostream& err);
int cmd_sweep(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
              std::ostream& err);
int cmd_tasks(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
              std::ostream& err);
int cmd_contaminate(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
                    std::ostream& err);

// Full command line entry point: parses argv, loads the config, applies
// --seed/--out, dispatches, and maps exceptions to exit statuses.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace purigan::app
