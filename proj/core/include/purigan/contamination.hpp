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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "purigan/distributions.hpp"

namespace purigan {

enum class Part { kMixed, kNegatives };

// Label-free access to a dataset: the only thing training code receives.
class TrainingView {
 public:
  TrainingView(Points mixed, Points negatives);
  TrainingView(std::shared_ptr<const Points> mixed,
               std::shared_ptr<const Points> negatives);

  const Points& mixed() const { return *mixed_; }
  const Points& negatives() const { return *negatives_; }
  const Points& part(Part p) const {
    return p == Part::kMixed ? *mixed_ : *negatives_;
  }
  Eigen::Index dimension() const { return mixed_->cols(); }

 private:
  std::shared_ptr<const Points> mixed_;
  std::shared_ptr<const Points> negatives_;
};

// The pair (X, X-) plus the ratios that produced it. Hidden per-point labels
// of X (1 = target, 0 = contamination) are kept for evaluation only and are
// not reachable through training_view().
class ContaminatedDataset {
 public:
  ContaminatedDataset(Points mixed, Points negatives,
                      std::vector<std::uint8_t> hidden_labels, double gamma_p,
                      double gamma_c);

  const Points& mixed() const { return *mixed_; }
  const Points& negatives() const { return *negatives_; }
  double gamma_p() const { return gamma_p_; }
  double gamma_c() const { return gamma_c_; }
  double pi() const { return 1.0 - gamma_p_; }
  std::span<const std::uint8_t> hidden_labels() const { return labels_; }
  std::size_t contamination_count() const;

  TrainingView training_view() const { return {mixed_, negatives_}; }

 private:
  std::shared_ptr<const Points> mixed_;
  std::shared_ptr<const Points> negatives_;
  std::vector<std::uint8_t> labels_;
  double gamma_p_;
  double gamma_c_;
};

// Round half away from zero; the counting rule for every ratio -> count step.
std::size_t round_count(double x);

// Sizes implied by a target count and the two ratios.
struct ContaminationCounts {
  std::size_t mixed = 0;          // |X|
  std::size_t target = 0;         // target points in X
  std::size_t contamination = 0;  // round(gamma_p * |X|)
  std::size_t negatives = 0;      // round(gamma_c * |X|)
};
ContaminationCounts contamination_counts(std::size_t target_count,
                                         double gamma_p, double gamma_c);

// Uses every point of target_pool, adds round(gamma_p * |X|) contamination
// points and draws round(gamma_c * |X|) negatives from the remaining part of
// contamination_pool, so X- and the contamination slice of X never share a
// pool index. X is shuffled.
ContaminatedDataset build_contaminated(const Points& target_pool,
                                       const Points& contamination_pool,
                                       double gamma_p, double gamma_c,
                                       Rng& rng);

// Uniform with-replacement draws from one part. Throws CapacityError when the
// part is empty.
Points minibatch(const TrainingView& view, Part part, std::size_t batch_size,
                 Rng& rng);

// mixed.csv, negatives.csv and the mixed_labels.csv sidecar.
void save_dataset(const ContaminatedDataset& ds,
                  const std::filesystem::path& dir);
// Reads mixed.csv and negatives.csv only.
TrainingView load_training_view(const std::filesystem::path& dir);

}  // namespace purigan
