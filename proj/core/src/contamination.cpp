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

#include "purigan/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "purigan/errors.hpp"
#include "purigan/io.hpp"

namespace purigan {

namespace {

void check_ratios(double gamma_p, double gamma_c) {
  if (!(gamma_p >= 0.0 && gamma_p < 1.0)) {
    throw ArgumentError("gamma_p must lie in [0, 1)");
  }
  if (!(gamma_c >= 0.0 && gamma_c <= 1.0)) {
    throw ArgumentError("gamma_c must lie in [0, 1]");
  }
}

Points gather_rows(const Points& src, std::span<const std::size_t> idx) {
  Points out(static_cast<Eigen::Index>(idx.size()), src.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = src.row(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

}  // namespace

TrainingView::TrainingView(Points mixed, Points negatives)
    : TrainingView(std::make_shared<const Points>(std::move(mixed)),
                   std::make_shared<const Points>(std::move(negatives))) {}

TrainingView::TrainingView(std::shared_ptr<const Points> mixed,
                           std::shared_ptr<const Points> negatives)
    : mixed_(std::move(mixed)), negatives_(std::move(negatives)) {
  if (!mixed_ || !negatives_) throw ArgumentError("training view needs both parts");
  if (negatives_->rows() > 0 && negatives_->cols() != mixed_->cols()) {
    throw ShapeError("mixed and negative points differ in dimension");
  }
}

ContaminatedDataset::ContaminatedDataset(Points mixed, Points negatives,
                                         std::vector<std::uint8_t> hidden_labels,
                                         double gamma_p, double gamma_c)
    : mixed_(std::make_shared<const Points>(std::move(mixed))),
      negatives_(std::make_shared<const Points>(std::move(negatives))),
      labels_(std::move(hidden_labels)),
      gamma_p_(gamma_p),
      gamma_c_(gamma_c) {
  check_ratios(gamma_p, gamma_c);
  if (static_cast<Eigen::Index>(labels_.size()) != mixed_->rows()) {
    throw ShapeError("one hidden label per mixed point is required");
  }
  if (negatives_->rows() > 0 && negatives_->cols() != mixed_->cols()) {
    throw ShapeError("mixed and negative points differ in dimension");
  }
}

std::size_t ContaminatedDataset::contamination_count() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 0));
}

std::size_t round_count(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError("count must be finite and >= 0");
  return static_cast<std::size_t>(std::round(x));
}

ContaminationCounts contamination_counts(std::size_t target_count,
                                         double gamma_p, double gamma_c) {
  check_ratios(gamma_p, gamma_c);
  ContaminationCounts c;
  c.mixed = round_count(static_cast<double>(target_count) / (1.0 - gamma_p));
  c.contamination = round_count(gamma_p * static_cast<double>(c.mixed));
  c.target = c.mixed - c.contamination;
  c.negatives = round_count(gamma_c * static_cast<double>(c.mixed));
  return c;
}

ContaminatedDataset build_contaminated(const Points& target_pool,
                                       const Points& contamination_pool,
                                       double gamma_p, double gamma_c,
                                       Rng& rng) {
  check_ratios(gamma_p, gamma_c);
  if (target_pool.rows() == 0) throw CapacityError("target pool is empty");
  const auto counts = contamination_counts(
      static_cast<std::size_t>(target_pool.rows()), gamma_p, gamma_c);
  if (counts.target > static_cast<std::size_t>(target_pool.rows())) {
    throw CapacityError("target pool too small");
  }
  const std::size_t needed = counts.contamination + counts.negatives;
  if (needed > static_cast<std::size_t>(contamination_pool.rows())) {
    throw CapacityError("contamination pool has " +
                        std::to_string(contamination_pool.rows()) +
                        " points, need " + std::to_string(needed));
  }
  if (needed > 0 && contamination_pool.cols() != target_pool.cols()) {
    throw ShapeError("pools differ in dimension");
  }

  std::vector<std::size_t> target_idx(static_cast<std::size_t>(target_pool.rows()));
  std::iota(target_idx.begin(), target_idx.end(), 0);
  std::shuffle(target_idx.begin(), target_idx.end(), rng);
  target_idx.resize(counts.target);

  std::vector<std::size_t> cont_idx(static_cast<std::size_t>(contamination_pool.rows()));
  std::iota(cont_idx.begin(), cont_idx.end(), 0);
  std::shuffle(cont_idx.begin(), cont_idx.end(), rng);
  std::span<const std::size_t> in_mixed(cont_idx.data(), counts.contamination);
  std::span<const std::size_t> in_negatives(cont_idx.data() + counts.contamination,
                                            counts.negatives);

  const auto d = target_pool.cols();
  Points stacked(static_cast<Eigen::Index>(counts.mixed), d);
  std::vector<std::uint8_t> stacked_labels(counts.mixed);
  Eigen::Index row = 0;
  for (auto i : target_idx) {
    stacked.row(row) = target_pool.row(static_cast<Eigen::Index>(i));
    stacked_labels[static_cast<std::size_t>(row++)] = 1;
  }
  for (auto i : in_mixed) {
    stacked.row(row) = contamination_pool.row(static_cast<Eigen::Index>(i));
    stacked_labels[static_cast<std::size_t>(row++)] = 0;
  }

  std::vector<std::size_t> order(counts.mixed);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Points mixed = gather_rows(stacked, order);
  std::vector<std::uint8_t> labels(counts.mixed);
  for (std::size_t i = 0; i < order.size(); ++i) labels[i] = stacked_labels[order[i]];

  Points negatives = counts.negatives > 0 ? gather_rows(contamination_pool, in_negatives)
                                          : Points(0, d);
  return ContaminatedDataset(std::move(mixed), std::move(negatives),
                             std::move(labels), gamma_p, gamma_c);
}

Points minibatch(const TrainingView& view, Part part, std::size_t batch_size,
                 Rng& rng) {
  if (batch_size == 0) throw ArgumentError("batch size must be >= 1");
  const Points& src = view.part(part);
  if (src.rows() == 0) {
    throw CapacityError(part == Part::kMixed
                            ? "cannot draw a minibatch: mixed set is empty"
                            : "cannot draw a minibatch: negative set is empty "
                              "(gamma_c = 0?)");
  }
  std::uniform_int_distribution<Eigen::Index> pick(0, src.rows() - 1);
  Points out(static_cast<Eigen::Index>(batch_size), src.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = src.row(pick(rng));
  return out;
}

void save_dataset(const ContaminatedDataset& ds,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::write_points_csv(dir / "mixed.csv", ds.mixed());
  Points neg = ds.negatives();
  if (neg.rows() == 0) neg.resize(0, ds.mixed().cols());
  io::write_points_csv(dir / "negatives.csv", neg);
  io::write_labels_csv(dir / "mixed_labels.csv",
                       {ds.hidden_labels().begin(), ds.hidden_labels().end()});
}

TrainingView load_training_view(const std::filesystem::path& dir) {
  return TrainingView(io::read_points_csv(dir / "mixed.csv"),
                      io::read_points_csv(dir / "negatives.csv"));
}

}  // namespace purigan
