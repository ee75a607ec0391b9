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

#include "purigan/app/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "purigan/errors.hpp"

namespace purigan::app {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(section) + ": expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ConfigError(std::string(section) + ": unknown key '" + item.key() + "'");
  }
}

std::string where(const char* section, const char* key) {
  return std::string(section) + "." + key;
}

template <typename T>
void read(const json& j, const char* section, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where(section, key) + ": wrong type");
  }
}

void read_positive(const json& j, const char* section, const char* key, long long& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ConfigError(where(section, key) + ": expected a positive integer");
  }
  out = v.get<long long>();
}

template <typename T>
void read_count(const json& j, const char* section, const char* key, T& out) {
  long long v = static_cast<long long>(out);
  read_positive(j, section, key, v);
  out = static_cast<T>(v);
}

void read_seed(const json& j, const char* section, const char* key, std::uint64_t& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(where(section, key) + ": expected a non-negative integer");
  }
  out = v.get<std::uint64_t>();
}

void read_number(const json& j, const char* section, const char* key, double& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ConfigError(where(section, key) + ": expected a number");
  out = j.at(key).get<double>();
}

// A number or the string "auto" (nullopt).
std::optional<double> auto_or_number(const json& v, const std::string& what) {
  if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
  if (v.is_number()) return v.get<double>();
  throw ConfigError(what + ": expected a number or \"auto\"");
}

json auto_json(const std::optional<double>& v) {
  return v ? json(*v) : json("auto");
}

std::vector<double> number_list(const json& j, const char* section, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(where(section, key) + ": expected a list");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where(section, key) + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

AnalyticDensity density_from(const json& j, const char* what) {
  try {
    auto any = distribution_from_json(j.dump());
    if (!std::holds_alternative<AnalyticDensity>(any)) {
      throw ConfigError(std::string(what) + ": expected a gaussian_mixture distribution");
    }
    return std::get<AnalyticDensity>(std::move(any));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

void parse_distributions(const json& j, DistributionsSection& s) {
  check_keys(j, "distributions", {"scenario", "target", "contamination"});
  read(j, "distributions", "scenario", s.scenario);
  if (j.contains("target") != j.contains("contamination")) {
    throw ConfigError("distributions: target and contamination must be given together");
  }
  if (j.contains("target")) {
    s.target = density_from(j.at("target"), "distributions.target");
    s.contamination = density_from(j.at("contamination"), "distributions.contamination");
    if (s.target->dimension() != s.contamination->dimension()) {
      throw ConfigError("distributions: target and contamination dimensions differ");
    }
  } else {
    try {
      builtin_scenario(s.scenario);
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("distributions.scenario: ") + e.what());
    }
  }
}

void check_gammas(double gamma_p, double gamma_c, const char* section) {
  if (!(gamma_p >= 0.0 && gamma_p < 1.0)) {
    throw ConfigError(std::string(section) + ": gamma_p must lie in [0, 1)");
  }
  if (!(gamma_c >= 0.0 && gamma_c <= 1.0)) {
    throw ConfigError(std::string(section) + ": gamma_c must lie in [0, 1]");
  }
}

void parse_contamination(const json& j, ContaminationSection& s) {
  check_keys(j, "contamination", {"target_count", "gamma_p", "gamma_c", "seed"});
  read_count(j, "contamination", "target_count", s.target_count);
  read_number(j, "contamination", "gamma_p", s.gamma_p);
  read_number(j, "contamination", "gamma_c", s.gamma_c);
  read_seed(j, "contamination", "seed", s.seed);
  check_gammas(s.gamma_p, s.gamma_c, "contamination");
}

void parse_objective(const json& j, ObjectiveSection& s) {
  check_keys(j, "objective", {"variant", "lambda", "c", "d", "pi"});
  if (j.contains("variant")) {
    if (!j.at("variant").is_string()) throw ConfigError("objective.variant: expected a string");
    try {
      s.variant = parse_variant(j.at("variant").get<std::string>());
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("objective.variant: ") + e.what());
    }
  }
  if (j.contains("lambda")) {
    read_number(j, "objective", "lambda", s.lambda);
    s.lambda_given = true;
  }
  read_number(j, "objective", "c", s.c);
  if (j.contains("d")) s.d = auto_or_number(j.at("d"), "objective.d");
  if (j.contains("pi")) s.pi = auto_or_number(j.at("pi"), "objective.pi");
  if (!(s.c > 0.0 && s.c < 1.0)) throw ConfigError("objective.c must lie in (0, 1)");
  if (!(s.lambda >= 0.0)) throw ConfigError("objective.lambda must be >= 0");
  if (s.pi && !(*s.pi > 0.0 && *s.pi <= 1.0)) throw ConfigError("objective.pi must lie in (0, 1]");
}

void parse_train(const json& j, TrainSection& s) {
  check_keys(j, "train",
             {"latent_dim", "hidden_units", "hidden_layers", "batch_size",
              "d_steps_per_g_step", "total_g_steps", "lr_g", "lr_d", "beta1", "beta2",
              "eval_every", "eval_samples", "mmd_samples", "seed"});
  read_count(j, "train", "latent_dim", s.latent_dim);
  read_count(j, "train", "hidden_units", s.hidden_units);
  if (j.contains("hidden_layers")) {
    const auto& v = j.at("hidden_layers");
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError("train.hidden_layers: expected a non-negative integer");
    }
    s.hidden_layers = v.get<int>();
  }
  read_count(j, "train", "batch_size", s.batch_size);
  read_count(j, "train", "d_steps_per_g_step", s.d_steps_per_g_step);
  read_positive(j, "train", "total_g_steps", s.total_g_steps);
  read_number(j, "train", "lr_g", s.lr_g);
  read_number(j, "train", "lr_d", s.lr_d);
  read_number(j, "train", "beta1", s.beta1);
  read_number(j, "train", "beta2", s.beta2);
  read_positive(j, "train", "eval_every", s.eval_every);
  read_count(j, "train", "eval_samples", s.eval_samples);
  read_count(j, "train", "mmd_samples", s.mmd_samples);
  read_seed(j, "train", "seed", s.seed);
}

void parse_sweep(const json& j, SweepSection& s) {
  check_keys(j, "sweep", {"gamma_p", "gamma_c", "pi", "variants", "replicates", "eval_points"});
  if (j.contains("gamma_p")) {
    s.gamma_p = number_list(j, "sweep", "gamma_p");
    s.gamma_p_given = true;
  }
  if (j.contains("gamma_c")) {
    s.gamma_c = number_list(j, "sweep", "gamma_c");
    s.gamma_c_given = true;
  }
  if (j.contains("pi")) {
    if (!j.at("pi").is_array()) throw ConfigError("sweep.pi: expected a list");
    s.pi.clear();
    for (const auto& v : j.at("pi")) s.pi.push_back(auto_or_number(v, "sweep.pi"));
    s.pi_given = true;
  }
  if (j.contains("variants")) {
    if (!j.at("variants").is_array()) throw ConfigError("sweep.variants: expected a list");
    s.variants.clear();
    for (const auto& v : j.at("variants")) {
      if (!v.is_string()) throw ConfigError("sweep.variants: expected strings");
      try {
        s.variants.push_back(parse_variant(v.get<std::string>()));
      } catch (const ArgumentError& e) {
        throw ConfigError(std::string("sweep.variants: ") + e.what());
      }
    }
    s.variants_given = true;
  }
  read_count(j, "sweep", "replicates", s.replicates);
  read_count(j, "sweep", "eval_points", s.eval_points);
  for (double g : s.gamma_p) check_gammas(g, 0.0, "sweep.gamma_p");
  for (double g : s.gamma_c) check_gammas(0.0, g, "sweep.gamma_c");
  for (const auto& p : s.pi) {
    if (p && !(*p > 0.0 && *p <= 1.0)) throw ConfigError("sweep.pi: values must lie in (0, 1]");
  }
  if ((s.gamma_p_given && s.gamma_p.empty()) || (s.gamma_c_given && s.gamma_c.empty()) ||
      (s.pi_given && s.pi.empty()) || (s.variants_given && s.variants.empty())) {
    throw ConfigError("sweep: lists must not be empty");
  }
}

void parse_verify(const json& j, VerifySection& v) {
  auto& s = v.suite;
  check_keys(j, "verify",
             {"theorem", "pis", "support_sizes", "lambdas", "d", "supports", "seeds", "c",
              "tolerance", "trend_slack", "grid", "projected_gradient",
              "overlapping_expected_fail"});
  read(j, "verify", "theorem", s.theorem);
  if (s.theorem != 1 && s.theorem != 2) throw ConfigError("verify.theorem must be 1 or 2");
  if (j.contains("pis")) s.pis = number_list(j, "verify", "pis");
  if (j.contains("lambdas")) s.lambdas = number_list(j, "verify", "lambdas");
  if (j.contains("support_sizes")) {
    s.support_sizes.clear();
    for (double k : number_list(j, "verify", "support_sizes")) {
      if (k < 2 || k != static_cast<double>(static_cast<std::size_t>(k))) {
        throw ConfigError("verify.support_sizes: expected integers >= 2");
      }
      s.support_sizes.push_back(static_cast<std::size_t>(k));
    }
  }
  if (j.contains("d")) s.d_override = auto_or_number(j.at("d"), "verify.d");
  if (j.contains("supports")) {
    std::string layout;
    read(j, "verify", "supports", layout);
    if (layout == "overlapping") {
      s.supports = SupportLayout::kOverlapping;
    } else if (layout == "disjoint") {
      s.supports = SupportLayout::kDisjoint;
    } else {
      throw ConfigError("verify.supports: expected \"overlapping\" or \"disjoint\"");
    }
  }
  if (j.contains("seeds")) {
    s.seeds.clear();
    if (!j.at("seeds").is_array()) throw ConfigError("verify.seeds: expected a list");
    for (const auto& x : j.at("seeds")) {
      if (!x.is_number_unsigned()) throw ConfigError("verify.seeds: expected non-negative integers");
      s.seeds.push_back(x.get<std::uint64_t>());
    }
  }
  read_number(j, "verify", "c", s.c);
  read_number(j, "verify", "tolerance", s.tolerance);
  read_number(j, "verify", "trend_slack", s.trend_slack);
  read(j, "verify", "grid", s.run_grid);
  read(j, "verify", "projected_gradient", s.run_projected_gradient);
  read(j, "verify", "overlapping_expected_fail", s.overlapping_expected_fail);
  if (s.pis.empty() || s.support_sizes.empty() || s.seeds.empty() ||
      (s.theorem == 1 && s.lambdas.empty())) {
    throw ConfigError("verify: lists must not be empty");
  }
  for (double pi : s.pis) {
    if (!(pi > 0.0 && pi <= 1.0)) throw ConfigError("verify.pis: values must lie in (0, 1]");
  }
  if (!(s.c > 0.0 && s.c < 1.0)) throw ConfigError("verify.c must lie in (0, 1)");
  if (!(s.tolerance > 0.0)) throw ConfigError("verify.tolerance must be positive");
  if (!s.run_grid && !s.run_projected_gradient) {
    throw ConfigError("verify: enable grid or projected_gradient");
  }
}

void parse_tasks(const json& j, TasksSection& s) {
  check_keys(j, "tasks",
             {"checkpoint", "points", "labels", "policy", "threshold", "pi", "eval_points",
              "seed"});
  if (j.contains("checkpoint")) {
    std::string p;
    read(j, "tasks", "checkpoint", p);
    s.checkpoint = p;
  }
  if (j.contains("points")) {
    std::string p;
    read(j, "tasks", "points", p);
    s.points = p;
  }
  if (j.contains("labels")) {
    std::string p;
    read(j, "tasks", "labels", p);
    s.labels = p;
  }
  read(j, "tasks", "policy", s.policy);
  if (s.policy != "quantile" && s.policy != "fixed") {
    throw ConfigError("tasks.policy: expected \"quantile\" or \"fixed\"");
  }
  read_number(j, "tasks", "threshold", s.threshold);
  if (j.contains("pi")) {
    double pi = 0.0;
    read_number(j, "tasks", "pi", pi);
    if (!(pi >= 0.0 && pi <= 1.0)) throw ConfigError("tasks.pi must lie in [0, 1]");
    s.pi = pi;
  }
  read_count(j, "tasks", "eval_points", s.eval_points);
  read_seed(j, "tasks", "seed", s.seed);
}

void parse_output(const json& j, OutputSection& s) {
  check_keys(j, "output", {"directory", "svg", "svg_points"});
  read(j, "output", "directory", s.directory);
  read(j, "output", "svg", s.svg);
  read_count(j, "output", "svg_points", s.svg_points);
  if (s.directory.empty()) throw ConfigError("output.directory must not be empty");
}

json density_json(const AnalyticDensity& d) { return json::parse(to_json(d)); }

}  // namespace

Scenario DistributionsSection::resolve() const {
  if (target) return {"custom", *target, *contamination};
  return builtin_scenario(scenario);
}

ObjectiveConfig ObjectiveSection::resolve(double dataset_pi) const {
  ObjectiveConfig o;
  o.variant = variant;
  o.lambda = lambda;
  o.c = c;
  o.pi = pi ? *pi : dataset_pi;
  o.d = d;
  return o;
}

TrainConfig TrainSection::resolve(const ObjectiveConfig& objective) const {
  TrainConfig t;
  t.objective = objective;
  t.latent_dim = latent_dim;
  t.hidden_units = hidden_units;
  t.hidden_layers = hidden_layers;
  t.batch_size = batch_size;
  t.d_steps_per_g_step = d_steps_per_g_step;
  t.total_g_steps = total_g_steps;
  t.lr_g = lr_g;
  t.lr_d = lr_d;
  t.beta1 = beta1;
  t.beta2 = beta2;
  t.eval_every = eval_every;
  t.eval_samples = eval_samples;
  t.mmd_samples = mmd_samples;
  t.seed = seed;
  return t;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"distributions", "contamination", "objective", "train", "sweep", "verify",
              "tasks", "output"});
  ExperimentConfig cfg;
  if (j.contains("distributions")) parse_distributions(j.at("distributions"), cfg.distributions);
  if (j.contains("contamination")) parse_contamination(j.at("contamination"), cfg.contamination);
  if (j.contains("objective")) parse_objective(j.at("objective"), cfg.objective);
  if (j.contains("train")) parse_train(j.at("train"), cfg.train);
  if (j.contains("sweep")) parse_sweep(j.at("sweep"), cfg.sweep);
  if (j.contains("verify")) parse_verify(j.at("verify"), cfg.verify);
  if (j.contains("tasks")) parse_tasks(j.at("tasks"), cfg.tasks);
  if (j.contains("output")) parse_output(j.at("output"), cfg.output);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& cfg) {
  json j;
  auto& dist = j["distributions"];
  if (cfg.distributions.target) {
    dist["target"] = density_json(*cfg.distributions.target);
    dist["contamination"] = density_json(*cfg.distributions.contamination);
  } else {
    dist["scenario"] = cfg.distributions.scenario;
  }
  const auto& c = cfg.contamination;
  j["contamination"] = {{"target_count", c.target_count},
                        {"gamma_p", c.gamma_p},
                        {"gamma_c", c.gamma_c},
                        {"seed", c.seed}};
  const auto& o = cfg.objective;
  j["objective"] = {{"variant", std::string(to_string(o.variant))},
                    {"c", o.c},
                    {"d", auto_json(o.d)},
                    {"pi", auto_json(o.pi)}};
  if (o.variant == Variant::kTwoLevel || o.lambda_given) j["objective"]["lambda"] = o.lambda;
  const auto& t = cfg.train;
  j["train"] = {{"latent_dim", t.latent_dim},
                {"hidden_units", t.hidden_units},
                {"hidden_layers", t.hidden_layers},
                {"batch_size", t.batch_size},
                {"d_steps_per_g_step", t.d_steps_per_g_step},
                {"total_g_steps", t.total_g_steps},
                {"lr_g", t.lr_g},
                {"lr_d", t.lr_d},
                {"beta1", t.beta1},
                {"beta2", t.beta2},
                {"eval_every", t.eval_every},
                {"eval_samples", t.eval_samples},
                {"mmd_samples", t.mmd_samples},
                {"seed", t.seed}};
  const auto& s = cfg.sweep;
  json sweep = {{"replicates", s.replicates}, {"eval_points", s.eval_points}};
  if (s.gamma_p_given) sweep["gamma_p"] = s.gamma_p;
  if (s.gamma_c_given) sweep["gamma_c"] = s.gamma_c;
  if (s.pi_given) {
    json list = json::array();
    for (const auto& p : s.pi) list.push_back(auto_json(p));
    sweep["pi"] = list;
  }
  if (s.variants_given) {
    json list = json::array();
    for (auto v : s.variants) list.push_back(std::string(to_string(v)));
    sweep["variants"] = list;
  }
  j["sweep"] = sweep;
  const auto& v = cfg.verify.suite;
  j["verify"] = {{"theorem", v.theorem},
                 {"pis", v.pis},
                 {"support_sizes", v.support_sizes},
                 {"lambdas", v.lambdas},
                 {"d", auto_json(v.d_override)},
                 {"supports", v.supports == SupportLayout::kDisjoint ? "disjoint" : "overlapping"},
                 {"seeds", v.seeds},
                 {"c", v.c},
                 {"tolerance", v.tolerance},
                 {"trend_slack", v.trend_slack},
                 {"grid", v.run_grid},
                 {"projected_gradient", v.run_projected_gradient},
                 {"overlapping_expected_fail", v.overlapping_expected_fail}};
  const auto& tk = cfg.tasks;
  json tasks = {{"policy", tk.policy},
                {"threshold", tk.threshold},
                {"eval_points", tk.eval_points},
                {"seed", tk.seed}};
  if (tk.checkpoint) tasks["checkpoint"] = *tk.checkpoint;
  if (tk.points) tasks["points"] = *tk.points;
  if (tk.labels) tasks["labels"] = *tk.labels;
  if (tk.pi) tasks["pi"] = *tk.pi;
  j["tasks"] = tasks;
  j["output"] = {{"directory", cfg.output.directory},
                 {"svg", cfg.output.svg},
                 {"svg_points", cfg.output.svg_points}};
  return j.dump(2) + "\n";
}

void apply_seed(ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.contamination.seed = seed;
  cfg.train.seed = seed;
  cfg.verify.suite.seeds = {seed};
  cfg.tasks.seed = seed;
}

}  // namespace purigan::app
