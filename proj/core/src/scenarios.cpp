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

#include "purigan/scenarios.hpp"

#include <Eigen/Cholesky>

#include "purigan/errors.hpp"

namespace purigan {

namespace {

Eigen::VectorXd point(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

}  // namespace

Scenario disjoint_scenario() {
  return {"disjoint",
          AnalyticDensity::IsotropicMixture({point(-4, 4), point(4, 4)}, 0.5),
          AnalyticDensity::IsotropicMixture({point(-4, -4), point(4, -4)}, 0.5)};
}

Scenario pu_scenario() {
  return {"pu", AnalyticDensity::Gaussian(point(2, 0), Eigen::MatrixXd::Identity(2, 2)),
          AnalyticDensity::Gaussian(point(-2, 0), Eigen::MatrixXd::Identity(2, 2))};
}

Scenario builtin_scenario(std::string_view name) {
  if (name == "disjoint") return disjoint_scenario();
  if (name == "pu") return pu_scenario();
  throw ArgumentError("unknown scenario: " + std::string(name));
}

std::vector<std::string> builtin_scenario_names() { return {"disjoint", "pu"}; }

ContaminatedDataset make_dataset(const Scenario& s, std::size_t target_count,
                                 double gamma_p, double gamma_c, Rng& rng) {
  const auto counts = contamination_counts(target_count, gamma_p, gamma_c);
  const Points target = sample(s.target, rng, target_count);
  const std::size_t pool = counts.contamination + counts.negatives;
  const Points contamination =
      pool > 0 ? sample(s.contamination, rng, pool) : Points(0, s.target.dimension());
  return build_contaminated(target, contamination, gamma_p, gamma_c, rng);
}

double fraction_near_modes(const Points& points, const AnalyticDensity& density,
                           double sigmas) {
  if (points.rows() == 0) throw ArgumentError("no points");
  if (points.cols() != density.dimension()) throw ShapeError("dimension mismatch");
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors;
  for (const auto& c : density.components()) factors.emplace_back(c.covariance);
  const double limit = sigmas * sigmas;
  Eigen::Index near = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const Eigen::VectorXd x = points.row(i).transpose();
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const Eigen::VectorXd diff = x - density.components()[k].mean;
      const Eigen::VectorXd w = factors[k].matrixL().solve(diff);
      if (w.squaredNorm() <= limit) {
        ++near;
        break;
      }
    }
  }
  return static_cast<double>(near) / static_cast<double>(points.rows());
}

}  // namespace purigan
