// Copyright 2026 The GraphTS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphts/series.hpp"
#include "graphts/visibility.hpp"

namespace graphts {

inline constexpr std::size_t kFeatureCount = 7;

// Column order of every feature vector, matrix and CSV header.
inline const std::array<std::string, kFeatureCount> kFeatureNames = {
    "avg_degree", "avg_clustering",    "transitivity",     "density",
    "diameter",   "global_efficiency", "avg_shortest_path"};

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  std::optional<ClassLabel> label;
};

FeatureVector extract_features(const VisibilityGraph& g,
                               std::optional<ClassLabel> label = std::nullopt);

// Labeled rows over named columns, row-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::vector<std::string> names);

  void add_row(std::span<const double> values, ClassLabel label);

  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return names_.size(); }
  double at(std::size_t row, std::size_t col) const {
    return data_[row * cols() + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return data_[row * cols() + col];
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols(), cols()};
  }
  std::vector<double> column(std::size_t c) const;

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<ClassLabel>& labels() const { return labels_; }

  FeatureMatrix select_columns(std::span<const std::size_t> columns) const;
  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<double> data_;
  std::vector<ClassLabel> labels_;
};

// Throws kEmptyInput on an empty list, kUnlabeledRow for unlabeled vectors.
FeatureMatrix build_matrix(std::span<const FeatureVector> vectors);

// Column z-scores with population std; columns with std below 1e-12 map to 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const FeatureMatrix& train);
  FeatureMatrix apply(const FeatureMatrix& m) const;
  void apply_in_place(std::span<double> row) const;
};

std::pair<FeatureMatrix, FeatureMatrix> standardize(
    const FeatureMatrix& train, const FeatureMatrix& apply_to);

struct AnovaResult {
  double f = 0.0;  // +inf when within-group variance is 0 but means differ
  std::vector<double> group_means;  // ordered by group id
  std::vector<std::size_t> group_sizes;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
};

// One-way ANOVA over arbitrary non-negative group ids. Groups with no rows
// are ignored; fewer than two populated groups throws kTooFewGroups.
AnovaResult anova_f(std::span<const double> values,
                    std::span<const int> groups);
AnovaResult anova_f(const FeatureMatrix& m, std::size_t feature_index);

// k columns with the largest F (ties: lower index), ascending.
std::vector<std::size_t> select_features(const FeatureMatrix& m,
                                         std::size_t k);
std::vector<std::size_t> select_features(std::span<const double> f_values,
                                         std::size_t k);

struct BoxplotStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending

  friend bool operator==(const BoxplotStats&, const BoxplotStats&) = default;
};

// Quantile by linear interpolation at position (n - 1) * p of sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

BoxplotStats boxplot_stats(std::span<const double> data);
// Throws kEmptyGroup when no row carries `label`.
BoxplotStats boxplot_stats(const FeatureMatrix& m, std::size_t feature_index,
                           ClassLabel label);

}  // namespace graphts
