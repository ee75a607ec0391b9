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

#include "purigan/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "purigan/errors.hpp"

namespace purigan {

namespace {

constexpr double kEigenClamp = -1e-8;

// Eigenvalues of a symmetric matrix with small negatives clamped to zero.
Eigen::VectorXd clamped_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = eig.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < kEigenClamp) {
      throw NumericError("matrix is indefinite beyond tolerance (eigenvalue " +
                         std::to_string(ev(i)) + ")");
    }
    ev(i) = std::max(ev(i), 0.0);
  }
  return ev;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  Eigen::VectorXd ev = eig.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < kEigenClamp) throw NumericError("covariance is indefinite beyond tolerance");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::VectorXd squared_norms(const Points& x) { return x.rowwise().squaredNorm(); }

// Sum of k(x_i, y_j) over all pairs.
double kernel_sum(const Points& x, const Points& y, double gamma) {
  Eigen::MatrixXd d2 = -2.0 * x * y.transpose();
  d2.colwise() += squared_norms(x);
  d2.rowwise() += squared_norms(y).transpose();
  return (-gamma * d2.array().max(0.0)).exp().sum();
}

}  // namespace

GaussianSummary summarize(const Points& samples) {
  if (samples.rows() < 2) throw ArgumentError("need at least two samples");
  GaussianSummary s;
  s.n = samples.rows();
  s.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - s.mean.transpose();
  s.covariance = (centered.transpose() * centered) / static_cast<double>(s.n - 1);
  s.covariance = 0.5 * (s.covariance + s.covariance.transpose());
  return s;
}

double frechet_gaussian(const GaussianSummary& a, const GaussianSummary& b) {
  if (a.mean.size() != b.mean.size()) throw ShapeError("sample dimensions differ");
  const Eigen::MatrixXd root_a = psd_sqrt(a.covariance);
  Eigen::MatrixXd inner = root_a * b.covariance * root_a;
  inner = 0.5 * (inner + inner.transpose());
  const double cross = clamped_eigenvalues(inner).array().sqrt().sum();
  const double mean_term = (a.mean - b.mean).squaredNorm();
  const double value =
      mean_term + a.covariance.trace() + b.covariance.trace() - 2.0 * cross;
  return std::max(value, 0.0);
}

double frechet_gaussian(const Points& a, const Points& b) {
  if (a.cols() != b.cols()) throw ShapeError("sample dimensions differ");
  const auto need = a.cols() + 1;
  if (a.rows() < need || b.rows() < need) {
    throw ArgumentError("Frechet distance needs at least d+1 samples per set");
  }
  return frechet_gaussian(summarize(a), summarize(b));
}

double mmd_rbf(const Points& a, const Points& b, double bandwidth) {
  if (!(bandwidth > 0.0)) throw ArgumentError("bandwidth must be positive");
  if (a.rows() < 2 || b.rows() < 2) throw ArgumentError("MMD needs at least two points per set");
  if (a.cols() != b.cols()) throw ShapeError("sample dimensions differ");
  const double gamma = 1.0 / (2.0 * bandwidth * bandwidth);
  const double m = static_cast<double>(a.rows());
  const double n = static_cast<double>(b.rows());
  // Diagonal terms are exactly 1 and are removed for the unbiased estimate.
  const double aa = (kernel_sum(a, a, gamma) - m) / (m * (m - 1.0));
  const double bb = (kernel_sum(b, b, gamma) - n) / (n * (n - 1.0));
  const double ab = kernel_sum(a, b, gamma) / (m * n);
  return aa + bb - 2.0 * ab;
}

double median_bandwidth(const Points& a, const Points& b, Eigen::Index max_points) {
  const Eigen::Index na = std::min(a.rows(), max_points);
  const Eigen::Index nb = std::min(b.rows(), max_points);
  Points pooled(na + nb, a.cols());
  pooled << a.topRows(na), b.topRows(nb);
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(pooled.rows() * (pooled.rows() - 1) / 2));
  for (Eigen::Index i = 0; i < pooled.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < pooled.rows(); ++j) {
      dist.push_back((pooled.row(i) - pooled.row(j)).norm());
    }
  }
  if (dist.empty()) throw ArgumentError("need at least two points for a bandwidth");
  auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  return *mid > 0.0 ? *mid : 1.0;
}

double tv_tabular(const TabularDistribution& p, const TabularDistribution& q) {
  if (p.support_size() != q.support_size()) throw ShapeError("support sizes differ");
  double acc = 0.0;
  for (std::size_t k = 0; k < p.support_size(); ++k) acc += std::abs(p[k] - q[k]);
  return 0.5 * acc;
}

double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw ShapeError("scores and labels differ in length");
  const auto n = scores.size();
  std::size_t n_pos = 0;
  for (auto l : labels) n_pos += l ? 1 : 0;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ArgumentError("AUROC needs both classes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });
  // Mann-Whitney with mid-ranks: tied groups share their average rank.
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]]) pos_rank_sum += mid_rank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

F1Accuracy f1_accuracy(std::span<const std::uint8_t> predictions,
                       std::span<const std::uint8_t> labels) {
  if (predictions.size() != labels.size()) {
    throw ShapeError("predictions and labels differ in length");
  }
  if (predictions.empty()) throw ArgumentError("no predictions");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] != 0;
    const bool l = labels[i] != 0;
    if (p && l) ++tp;
    else if (p) ++fp;
    else if (l) ++fn;
    else ++tn;
  }
  F1Accuracy r;
  r.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  r.accuracy = static_cast<double>(tp + tn) / static_cast<double>(labels.size());
  return r;
}

}  // namespace purigan
