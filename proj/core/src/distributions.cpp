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

#include "purigan/distributions.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "purigan/errors.hpp"

namespace purigan {

namespace {

constexpr double kWeightTolerance = 1e-9;

}  // namespace

TabularDistribution::TabularDistribution(std::vector<double> weights)
    : mass_(std::move(weights)) {
  if (mass_.empty()) throw ArgumentError("tabular distribution: empty support");
  double total = 0.0;
  for (double w : mass_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ArgumentError("tabular distribution: weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) throw ArgumentError("tabular distribution: all-zero weights");
  for (double& w : mass_) w /= total;
}

TabularDistribution TabularDistribution::Uniform(std::size_t support_size) {
  return TabularDistribution(std::vector<double>(support_size, 1.0));
}

TabularDistribution TabularDistribution::PointMass(std::size_t support_size,
                                                   std::size_t k) {
  if (k >= support_size) throw DomainError("point mass index out of range");
  std::vector<double> w(support_size, 0.0);
  w[k] = 1.0;
  return TabularDistribution(std::move(w));
}

AnalyticDensity::AnalyticDensity(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ArgumentError("mixture needs at least one component");
  dimension_ = components_.front().mean.size();
  if (dimension_ < 1) throw ShapeError("mixture dimension must be positive");

  double total = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.weight) || c.weight < 0.0 || c.weight > 1.0) {
      throw ArgumentError("mixture weights must lie in [0, 1]");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ArgumentError("mixture weights must sum to 1");
  }

  const double log_two_pi = std::log(2.0 * std::numbers::pi);
  for (auto& c : components_) {
    c.weight /= total;
    if (c.mean.size() != dimension_ || c.covariance.rows() != dimension_ ||
        c.covariance.cols() != dimension_) {
      throw ShapeError("mixture component has inconsistent dimension");
    }
    if (!c.covariance.isApprox(c.covariance.transpose(), 1e-12)) {
      throw ArgumentError("covariance must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.covariance,
                                                       Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
      throw ArgumentError("covariance must be positive definite");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(c.covariance);
    Eigen::MatrixXd lower = llt.matrixL();
    double log_det = 2.0 * lower.diagonal().array().log().sum();
    cholesky_.push_back(std::move(lower));
    log_norm_.push_back(-0.5 * (static_cast<double>(dimension_) * log_two_pi +
                                log_det));
    scales_.push_back(std::sqrt(c.covariance.diagonal().maxCoeff()));
  }
}

AnalyticDensity AnalyticDensity::Gaussian(Eigen::VectorXd mean,
                                          Eigen::MatrixXd covariance) {
  return AnalyticDensity({GaussianComponent{1.0, std::move(mean),
                                            std::move(covariance)}});
}

AnalyticDensity AnalyticDensity::IsotropicMixture(
    const std::vector<Eigen::VectorXd>& means, double sigma) {
  if (means.empty()) throw ArgumentError("mixture needs at least one component");
  if (!(sigma > 0.0)) throw ArgumentError("sigma must be positive");
  std::vector<GaussianComponent> comps;
  const double w = 1.0 / static_cast<double>(means.size());
  for (const auto& m : means) {
    comps.push_back({w, m,
                     Eigen::MatrixXd::Identity(m.size(), m.size()) * sigma * sigma});
  }
  return AnalyticDensity(std::move(comps));
}

double eval_pdf(const TabularDistribution& dist, std::size_t k) {
  if (k >= dist.support_size()) {
    throw DomainError("support index " + std::to_string(k) + " out of range");
  }
  return dist[k];
}

double eval_pdf(const AnalyticDensity& dist,
                const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != dist.dimension()) {
    throw ShapeError("point dimension " + std::to_string(x.size()) +
                     " does not match density dimension " +
                     std::to_string(dist.dimension()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dist.components_.size(); ++i) {
    const auto& c = dist.components_[i];
    Eigen::VectorXd z = dist.cholesky_[i].triangularView<Eigen::Lower>().solve(
        x - c.mean);
    total += c.weight * std::exp(dist.log_norm_[i] - 0.5 * z.squaredNorm());
  }
  return total;
}

std::vector<std::size_t> sample(const TabularDistribution& dist, Rng& rng,
                                std::size_t n) {
  if (n == 0) throw ArgumentError("sample count must be >= 1");
  std::vector<double> cdf(dist.support_size());
  std::partial_sum(dist.mass().begin(), dist.mass().end(), cdf.begin());
  std::uniform_real_distribution<double> unif(0.0, cdf.back());
  std::vector<std::size_t> out(n);
  for (auto& k : out) {
    const double u = unif(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    k = static_cast<std::size_t>(std::distance(cdf.begin(), it));
    if (k >= cdf.size()) k = cdf.size() - 1;
    // Skip zero-mass cells that upper_bound can land on at ties.
    while (dist[k] == 0.0 && k > 0) --k;
  }
  return out;
}

Points sample(const AnalyticDensity& dist, Rng& rng, std::size_t n) {
  if (n == 0) throw ArgumentError("sample count must be >= 1");
  const auto d = dist.dimension();
  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& c : dist.components_) cdf.push_back(acc += c.weight);

  std::uniform_real_distribution<double> unif(0.0, acc);
  std::normal_distribution<double> normal(0.0, 1.0);
  Points out(static_cast<Eigen::Index>(n), d);
  Eigen::VectorXd z(d);
  for (Eigen::Index row = 0; row < out.rows(); ++row) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), unif(rng));
    std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(std::distance(cdf.begin(), it)), cdf.size() - 1);
    for (Eigen::Index j = 0; j < d; ++j) z(j) = normal(rng);
    out.row(row) = (dist.components_[i].mean + dist.cholesky_[i] * z).transpose();
  }
  return out;
}

TabularDistribution make_mixture(double pi, const TabularDistribution& p_plus,
                                 const TabularDistribution& p_minus) {
  if (!(pi > 0.0 && pi < 1.0)) throw ArgumentError("pi must lie in (0, 1)");
  if (p_plus.support_size() != p_minus.support_size()) {
    throw ShapeError("mixture components have different support sizes");
  }
  std::vector<double> mass(p_plus.support_size());
  for (std::size_t k = 0; k < mass.size(); ++k) {
    mass[k] = pi * p_plus[k] + (1.0 - pi) * p_minus[k];
  }
  return TabularDistribution(std::move(mass));
}

bool supports_separated(const AnalyticDensity& a, const AnalyticDensity& b,
                        double sigmas) {
  if (a.dimension() != b.dimension()) throw ShapeError("dimension mismatch");
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    for (std::size_t j = 0; j < b.components().size(); ++j) {
      const double gap =
          (a.components()[i].mean - b.components()[j].mean).norm();
      if (gap < sigmas * (a.component_scale(i) + b.component_scale(j))) {
        return false;
      }
    }
  }
  return true;
}

std::string to_json(const TabularDistribution& dist) {
  nlohmann::json j;
  j["kind"] = "tabular";
  j["support"] = dist.support_size();
  j["mass"] = std::vector<double>(dist.mass().begin(), dist.mass().end());
  return j.dump();
}

std::string to_json(const AnalyticDensity& dist) {
  nlohmann::json j;
  j["kind"] = "gaussian_mixture";
  j["dimension"] = dist.dimension();
  auto weights = nlohmann::json::array();
  auto means = nlohmann::json::array();
  auto covs = nlohmann::json::array();
  for (const auto& c : dist.components()) {
    weights.push_back(c.weight);
    means.push_back(std::vector<double>(c.mean.data(), c.mean.data() + c.mean.size()));
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < c.covariance.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(c.covariance.cols()));
      for (Eigen::Index k = 0; k < c.covariance.cols(); ++k) row[k] = c.covariance(r, k);
      rows.push_back(row);
    }
    covs.push_back(rows);
  }
  j["weights"] = weights;
  j["means"] = means;
  j["covariances"] = covs;
  return j.dump();
}

AnyDistribution distribution_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("distribution document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw ArgumentError("distribution document needs a \"kind\" field");
  }
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "tabular") {
      for (const auto& [key, _] : j.items()) {
        if (key != "kind" && key != "support" && key != "mass") {
          throw ArgumentError("unknown tabular key: " + key);
        }
      }
      auto mass = j.at("mass").get<std::vector<double>>();
      if (j.contains("support") && j.at("support").get<std::size_t>() != mass.size()) {
        throw ShapeError("tabular support does not match mass length");
      }
      return TabularDistribution(std::move(mass));
    }
    if (kind == "gaussian_mixture") {
      for (const auto& [key, _] : j.items()) {
        if (key != "kind" && key != "dimension" && key != "weights" &&
            key != "means" && key != "covariances") {
          throw ArgumentError("unknown gaussian_mixture key: " + key);
        }
      }
      const auto means = j.at("means").get<std::vector<std::vector<double>>>();
      const auto covs =
          j.at("covariances").get<std::vector<std::vector<std::vector<double>>>>();
      std::vector<double> weights;
      if (j.contains("weights")) {
        weights = j.at("weights").get<std::vector<double>>();
      } else {
        weights.assign(means.size(), 1.0 / static_cast<double>(means.size()));
      }
      if (weights.size() != means.size() || covs.size() != means.size()) {
        throw ShapeError("mixture weights/means/covariances lengths differ");
      }
      std::vector<GaussianComponent> comps;
      for (std::size_t i = 0; i < means.size(); ++i) {
        const auto d = static_cast<Eigen::Index>(means[i].size());
        GaussianComponent c;
        c.weight = weights[i];
        c.mean = Eigen::Map<const Eigen::VectorXd>(means[i].data(), d);
        c.covariance.resize(d, d);
        if (static_cast<Eigen::Index>(covs[i].size()) != d) {
          throw ShapeError("covariance row count does not match dimension");
        }
        for (Eigen::Index r = 0; r < d; ++r) {
          if (static_cast<Eigen::Index>(covs[i][r].size()) != d) {
            throw ShapeError("covariance column count does not match dimension");
          }
          for (Eigen::Index k = 0; k < d; ++k) c.covariance(r, k) = covs[i][r][k];
        }
        comps.push_back(std::move(c));
      }
      AnalyticDensity density(std::move(comps));
      if (j.contains("dimension") &&
          j.at("dimension").get<Eigen::Index>() != density.dimension()) {
        throw ShapeError("declared dimension does not match components");
      }
      return density;
    }
    throw ArgumentError("unknown distribution kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("distribution document: ") + e.what());
  }
}

}  // namespace purigan
