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
#include <sstream>

#include "common.hpp"
#include "purigan/app/commands.hpp"
#include "purigan/io.hpp"
#include "purigan/oracle.hpp"

namespace purigan::app {

namespace {

std::string joined(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += io::format_double(v[i]);
  }
  return s;
}

void write_reports(const std::filesystem::path& path, const SuiteResult& result, bool timings) {
  io::CsvWriter csv(path);
  csv.header({"theorem", "method", "pi", "lambda_or_d", "K", "seed", "tv", "tv_grid", "tv_pg",
              "agreement_tv", "v_at_solution", "bound", "gap", "stationarity", "converged",
              "passed", "expected", "p_g_star", "runtime_ms"});
  for (const auto& r : result.reports) {
    csv.field(r.theorem)
        .field(r.method)
        .field(r.pi)
        .field(r.lambda_or_d)
        .field(r.support_size)
        .field(static_cast<long long>(r.seed))
        .field(r.tv_to_target)
        .field(r.tv_grid)
        .field(r.tv_pg)
        .field(r.agreement_tv)
        .field(r.v_at_solution)
        .field(r.analytic_bound)
        .field(r.bound_gap)
        .field(r.stationarity)
        .field(r.converged ? "true" : "false")
        .field(r.passed ? "true" : "false")
        .field(r.expected_pass ? "true" : "false")
        .field(joined(r.p_g_star));
    if (timings) {
      csv.field(r.runtime_ms);
    } else {
      csv.field("NA");
    }
    csv.end_row();
  }
  csv.close();
}

void write_trends(const std::filesystem::path& path, const SuiteResult& result,
                  const std::vector<double>& lambdas) {
  io::CsvWriter csv(path);
  csv.header({"pi", "K", "seed", "lambdas", "tvs", "non_increasing", "expected"});
  for (const auto& t : result.trends) {
    csv.field(t.pi)
        .field(t.support_size)
        .field(static_cast<long long>(t.seed))
        .field(joined(lambdas))
        .field(joined(t.tvs))
        .field(t.ok ? "true" : "false")
        .field(t.expected ? "true" : "false");
    csv.end_row();
  }
  csv.close();
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, const CliOptions& opt, std::ostream& out,
               std::ostream&) {
  const auto dir = prepare_output(cfg, opt.force);
  write_effective_config(cfg, dir);
  const auto& suite = cfg.verify.suite;
  const SuiteResult result = verify_theorem(suite);
  write_reports(dir / "verify.csv", result, opt.timings);
  if (suite.theorem == 1) {
    std::vector<double> lambdas = suite.lambdas;
    std::sort(lambdas.begin(), lambdas.end());
    write_trends(dir / "trends.csv", result, lambdas);
  }

  std::size_t passed = 0, expected = 0, unexpected_failures = 0, bound_violations = 0;
  for (const auto& r : result.reports) {
    passed += r.passed;
    expected += r.expected_pass;
    unexpected_failures += r.expected_pass && !r.passed;
    bound_violations += !r.bound_ok();
  }
  std::size_t trend_failures = 0;
  for (const auto& t : result.trends) trend_failures += t.expected && !t.ok;
  const bool ok = result.all_passed();
  out << "theorem " << suite.theorem << ": " << result.reports.size() << " configurations, "
      << passed << " passed, " << expected << " required, " << unexpected_failures
      << " required failures, " << bound_violations << " bound violations";
  if (suite.theorem == 1) out << ", " << trend_failures << " trend failures";
  out << "\n" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace purigan::app
