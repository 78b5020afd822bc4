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

#include "graphts/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "graphts/error.hpp"
#include "graphts/graph_metrics.hpp"

namespace graphts {

FeatureVector extract_features(const VisibilityGraph& g,
                               std::optional<ClassLabel> label) {
  const MetricReport r = compute_metrics(g, 0, /*with_communities=*/false);
  FeatureVector v;
  v.values = {r.avg_degree,
              r.avg_clustering,
              r.transitivity,
              r.density,
              static_cast<double>(r.diameter),
              r.global_efficiency,
              r.avg_shortest_path};
  v.label = label;
  return v;
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> names)
    : names_(std::move(names)) {}

void FeatureMatrix::add_row(std::span<const double> values, ClassLabel label) {
  if (values.size() != cols()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "row has " + std::to_string(values.size()) +
                    " values, matrix has " + std::to_string(cols()) +
                    " columns");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  labels_.push_back(label);
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

FeatureMatrix FeatureMatrix::select_columns(
    std::span<const std::size_t> columns) const {
  std::vector<std::string> names;
  for (std::size_t c : columns) names.push_back(names_.at(c));
  FeatureMatrix out(std::move(names));
  std::vector<double> buf(columns.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) buf[i] = at(r, columns[i]);
    out.add_row(buf, labels_[r]);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(
    std::span<const std::size_t> rows) const {
  FeatureMatrix out(names_);
  for (std::size_t r : rows) out.add_row(row(r), labels_.at(r));
  return out;
}

FeatureMatrix build_matrix(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no feature vectors");
  }
  FeatureMatrix m({kFeatureNames.begin(), kFeatureNames.end()});
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!vectors[i].label) {
      throw Error(ErrorCode::kUnlabeledRow,
                  "feature vector " + std::to_string(i) + " has no label");
    }
    m.add_row(vectors[i].values, *vectors[i].label);
  }
  return m;
}

Standardizer Standardizer::fit(const FeatureMatrix& train) {
  if (train.rows() == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot standardize on zero rows");
  }
  constexpr double kStdGuard = 1e-12;
  Standardizer s;
  const auto n = static_cast<double>(train.rows());
  s.mean.assign(train.cols(), 0.0);
  s.scale.assign(train.cols(), 0.0);
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) sum += train.at(r, c);
    const double mu = sum / n;
    double ss = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double d = train.at(r, c) - mu;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / n);
    s.mean[c] = mu;
    s.scale[c] = sd < kStdGuard ? 0.0 : 1.0 / sd;
  }
  return s;
}

void Standardizer::apply_in_place(std::span<double> row) const {
  for (std::size_t c = 0; c < row.size(); ++c) {
    row[c] = (row[c] - mean[c]) * scale[c];
  }
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& m) const {
  if (m.cols() != mean.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "standardizer fitted on " + std::to_string(mean.size()) +
                    " columns, got " + std::to_string(m.cols()));
  }
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out.at(r, c) = (out.at(r, c) - mean[c]) * scale[c];
    }
  }
  return out;
}

std::pair<FeatureMatrix, FeatureMatrix> standardize(
    const FeatureMatrix& train, const FeatureMatrix& apply_to) {
  const Standardizer s = Standardizer::fit(train);
  return {s.apply(train), s.apply(apply_to)};
}

AnovaResult anova_f(std::span<const double> values,
                    std::span<const int> groups) {
  if (values.size() != groups.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "values and groups differ in length");
  }
  int max_group = -1;
  for (int g : groups) {
    if (g < 0) throw Error(ErrorCode::kInvalidParams, "negative group id");
    max_group = std::max(max_group, g);
  }
  const auto slots = static_cast<std::size_t>(max_group + 1);
  std::vector<double> sums(slots, 0.0);
  std::vector<std::size_t> sizes(slots, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto g = static_cast<std::size_t>(groups[i]);
    sums[g] += values[i];
    ++sizes[g];
  }

  AnovaResult out;
  std::vector<std::size_t> slot_of(slots, 0);
  for (std::size_t g = 0; g < slots; ++g) {
    if (sizes[g] == 0) continue;
    slot_of[g] = out.group_means.size();
    out.group_means.push_back(sums[g] / static_cast<double>(sizes[g]));
    out.group_sizes.push_back(sizes[g]);
  }
  const std::size_t k = out.group_means.size();
  if (k < 2) {
    throw Error(ErrorCode::kTooFewGroups,
                "ANOVA needs at least two populated groups, got " +
                    std::to_string(k));
  }
  const std::size_t m = values.size();
  out.df_between = k - 1;
  out.df_within = m - k;

  double grand = 0.0;
  for (double v : values) grand += v;
  grand /= static_cast<double>(m);

  const bool equal_means =
      std::all_of(out.group_means.begin(), out.group_means.end(),
                  [&](double mu) { return mu == out.group_means.front(); });
  double ssb = 0.0;
  if (!equal_means) {
    for (std::size_t i = 0; i < k; ++i) {
      const double d = out.group_means[i] - grand;
      ssb += static_cast<double>(out.group_sizes[i]) * d * d;
    }
  }
  double ssw = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d =
        values[i] - out.group_means[slot_of[static_cast<std::size_t>(groups[i])]];
    ssw += d * d;
  }

  if (ssb == 0.0) {
    out.f = 0.0;
  } else if (ssw == 0.0 || out.df_within == 0) {
    out.f = std::numeric_limits<double>::infinity();
  } else {
    out.f = (ssb / static_cast<double>(out.df_between)) /
            (ssw / static_cast<double>(out.df_within));
  }
  return out;
}

AnovaResult anova_f(const FeatureMatrix& m, std::size_t feature_index) {
  std::vector<int> groups(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    groups[r] = static_cast<int>(m.labels()[r]);
  }
  const auto values = m.column(feature_index);
  return anova_f(values, groups);
}

std::vector<std::size_t> select_features(std::span<const double> f_values,
                                         std::size_t k) {
  if (k < 1 || k > f_values.size()) {
    throw Error(ErrorCode::kBadK, "k = " + std::to_string(k) +
                                      " outside [1, " +
                                      std::to_string(f_values.size()) + "]");
  }
  std::vector<std::size_t> order(f_values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f_values[a] > f_values[b];
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::size_t> select_features(const FeatureMatrix& m,
                                         std::size_t k) {
  std::vector<double> f(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) f[c] = anova_f(m, c).f;
  return select_features(f, k);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxplotStats boxplot_stats(std::span<const double> data) {
  if (data.empty()) throw Error(ErrorCode::kEmptyGroup, "no data");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  BoxplotStats s;
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  bool seen = false;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      s.outliers.push_back(v);
      continue;
    }
    if (!seen) s.whisker_low = v;
    s.whisker_high = v;
    seen = true;
  }
  return s;
}

BoxplotStats boxplot_stats(const FeatureMatrix& m, std::size_t feature_index,
                           ClassLabel label) {
  std::vector<double> data;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.labels()[r] == label) data.push_back(m.at(r, feature_index));
  }
  if (data.empty()) {
    throw Error(ErrorCode::kEmptyGroup,
                "no rows labeled " + std::string(to_string(label)));
  }
  return boxplot_stats(data);
}

}  // namespace graphts
