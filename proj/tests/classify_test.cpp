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

#include "graphts/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "graphts/error.hpp"
#include "graphts/random.hpp"

namespace graphts {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

Dataset dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& y,
                int classes) {
  Dataset d;
  d.cols = rows.front().size();
  d.classes = classes;
  for (std::size_t i = 0; i < rows.size(); ++i) d.add(rows[i], y[i]);
  return d;
}

std::vector<std::size_t> all_rows(const Dataset& d) {
  std::vector<std::size_t> r(d.rows());
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Three well-separated Gaussian blobs in 3-D.
FeatureMatrix blobs(std::size_t per_class, std::uint64_t seed, double spread = 0.5) {
  Xoshiro256 rng(seed);
  FeatureMatrix m({"a", "b", "c"});
  for (std::size_t i = 0; i < 3 * per_class; ++i) {
    const int cls = static_cast<int>(i % 3);
    std::vector<double> row{cls * 2.0 + spread * rng.normal(), -cls + spread * rng.normal(),
                            spread * rng.normal()};
    m.add_row(row, static_cast<ClassLabel>(cls));
  }
  return m;
}

TEST(Task, TargetsAndNames) {
  EXPECT_EQ(class_count(Task::kTwoClass), 2);
  EXPECT_EQ(class_count(Task::kThreeClass), 3);
  EXPECT_EQ(target_for(ClassLabel::kHealthy, Task::kTwoClass), 0);
  EXPECT_EQ(target_for(ClassLabel::kMyopathy, Task::kTwoClass), 1);
  EXPECT_EQ(target_for(ClassLabel::kNeuropathy, Task::kTwoClass), 1);
  EXPECT_EQ(target_for(ClassLabel::kNeuropathy, Task::kThreeClass), 2);
  EXPECT_EQ(parse_task("two_class"), Task::kTwoClass);
  EXPECT_EQ(to_string(parse_task(to_string(Task::kThreeClass))), "three_class");
  EXPECT_EQ(code_of([] { parse_task("four_class"); }), ErrorCode::kBadSpec);
}

TEST(Metrics, BinaryOracle) {
  const auto m = evaluate_binary({8, 2, 9, 1});
  EXPECT_NEAR(m.accuracy, 0.85, 1e-12);
  EXPECT_NEAR(m.precision, 0.8, 1e-12);
  EXPECT_NEAR(m.recall, 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(m.f_score, 2 * 0.8 * (8.0 / 9.0) / (0.8 + 8.0 / 9.0), 1e-12);
  EXPECT_NEAR(m.specificity, 9.0 / 11.0, 1e-12);
  EXPECT_FALSE(m.zero_denominator);
}

TEST(Metrics, ZeroDenominatorsAreFlagged) {
  const auto m = evaluate_binary({0, 0, 5, 0});
  EXPECT_EQ(m.precision, 0.0);
  EXPECT_EQ(m.recall, 0.0);
  EXPECT_EQ(m.f_score, 0.0);
  EXPECT_EQ(m.specificity, 1.0);
  EXPECT_TRUE(m.zero_denominator);
}

TEST(Metrics, TwoClassMatrixMatchesBinary) {
  ConfusionMatrix cm(2);
  cm.add(1, 1, 8);
  cm.add(0, 1, 2);
  cm.add(0, 0, 9);
  cm.add(1, 0, 1);
  const auto c = one_vs_rest(cm, 1);
  EXPECT_EQ(c.tp, 8u);
  EXPECT_EQ(c.fp, 2u);
  EXPECT_EQ(c.tn, 9u);
  EXPECT_EQ(c.fn, 1u);
  EXPECT_EQ(cm.total(), 20u);
  EXPECT_EQ(cm.trace(), 17u);
  EXPECT_NEAR(evaluate(cm).accuracy, 0.85, 1e-12);
}

TEST(Metrics, MacroAverageThreeClass) {
  ConfusionMatrix cm(3);
  cm.add(0, 0, 5);
  cm.add(0, 1, 1);
  cm.add(1, 1, 4);
  cm.add(2, 2, 3);
  cm.add(2, 0, 2);
  const auto m = evaluate(cm);
  EXPECT_NEAR(m.accuracy, 12.0 / 15.0, 1e-12);
  const double p = (5.0 / 7 + 4.0 / 5 + 1.0) / 3;
  const double r = (5.0 / 6 + 1.0 + 3.0 / 5) / 3;
  EXPECT_NEAR(m.precision, p, 1e-12);
  EXPECT_NEAR(m.recall, r, 1e-12);
  EXPECT_NEAR(m.f_score, 2 * p * r / (p + r), 1e-12);
  EXPECT_NEAR(m.specificity, (7.0 / 9 + 10.0 / 11 + 10.0 / 10) / 3, 1e-12);
  for (double v : {m.accuracy, m.precision, m.recall, m.f_score, m.specificity}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(code_of([] { evaluate(ConfusionMatrix(3)); }), ErrorCode::kEmptyMatrix);
}

TEST(Folds, StratifiedSizes) {
  const std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  const auto f = stratified_kfold(labels, 5, 3);
  for (std::size_t k = 0; k < 5; ++k) {
    const auto test = f.test_rows(k);
    ASSERT_EQ(test.size(), 2u);
    EXPECT_NE(labels[test[0]], labels[test[1]]);
    EXPECT_EQ(f.train_rows(k).size(), 8u);
  }
  EXPECT_EQ(code_of([&] { stratified_kfold(labels, 6, 3); }), ErrorCode::kClassTooSmall);
}

TEST(Folds, PartitionAndBalanceProperty) {
  Xoshiro256 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.below(9);
    const int classes = 2 + static_cast<int>(rng.below(3));
    std::vector<int> labels;
    for (int c = 0; c < classes; ++c) {
      const std::size_t n = k + rng.below(30);
      labels.insert(labels.end(), n, c);
    }
    for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng.below(i)]);
    const auto f = stratified_kfold(labels, k, trial);
    std::vector<int> seen(labels.size(), 0);
    std::size_t min_size = labels.size(), max_size = 0;
    for (std::size_t fold = 0; fold < k; ++fold) {
      const auto t = f.test_rows(fold);
      min_size = std::min(min_size, t.size());
      max_size = std::max(max_size, t.size());
      for (auto r : t) ++seen[r];
      for (int c = 0; c < classes; ++c) {
        const auto n_c = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), c));
        const auto in_fold = static_cast<std::size_t>(
            std::count_if(t.begin(), t.end(), [&](std::size_t r) { return labels[r] == c; }));
        EXPECT_GE(in_fold, n_c / k);
        EXPECT_LE(in_fold, (n_c + k - 1) / k);
      }
    }
    EXPECT_LE(max_size - min_size, 1u);
    for (int s : seen) EXPECT_EQ(s, 1);
    EXPECT_EQ(stratified_kfold(labels, k, trial).fold_of, f.fold_of);
  }
}

TEST(Knn, OneNearestNeighborRecoversTraining) {
  Xoshiro256 rng(5);
  Dataset d;
  d.cols = 4;
  d.classes = 3;
  for (int i = 0; i < 60; ++i) {
    std::vector<double> row(4);
    for (double& v : row) v = rng.normal();
    d.add(row, static_cast<int>(rng.below(3)));
  }
  for (std::size_t r = 0; r < d.rows(); ++r) EXPECT_EQ(knn_predict(d, 1, d.row(r)), d.y[r]);
  EXPECT_EQ(code_of([&] { knn_predict(d, 0, d.row(0)); }), ErrorCode::kBadK);
  EXPECT_EQ(code_of([&] { knn_predict(d, 61, d.row(0)); }), ErrorCode::kBadK);
}

TEST(Knn, MajorityAndTieRules) {
  const auto d = dataset({{0}, {1}, {2}, {10}}, {0, 1, 1, 2}, 3);
  const std::vector<double> q{0.1};
  EXPECT_EQ(knn_predict(d, 3, q), 1);
  // 2 neighbours split 0/1: class met first in distance order wins.
  EXPECT_EQ(knn_predict(d, 2, q), 0);
  // Equidistant rows: the lower index is nearer.
  const auto e = dataset({{-1}, {1}}, {1, 0}, 2);
  const std::vector<double> zero{0.0};
  EXPECT_EQ(knn_predict(e, 1, zero), 1);
}

TEST(LogReg, SeparableLine) {
  const auto d = dataset({{-2}, {-1}, {1}, {2}}, {0, 0, 1, 1}, 2);
  const auto model = logreg_train(d, {});
  for (std::size_t r = 0; r < d.rows(); ++r)
    EXPECT_EQ(logreg_predict(model, d.row(r)).label, d.y[r]);
  EXPECT_FALSE(model.diverged);
  for (std::size_t e = 1; e < model.loss_history.size(); ++e)
    EXPECT_LE(model.loss_history[e], model.loss_history[e - 1] + 1e-12);
}

TEST(LogReg, MirroredDataIsUndecided) {
  const auto d = dataset({{-1}, {1}, {-1}, {1}}, {0, 0, 1, 1}, 2);
  const auto model = logreg_train(d, {});
  const std::vector<double> q{0.0};
  const auto p = logreg_predict(model, q);
  EXPECT_NEAR(p.probabilities[0], 0.5, 1e-9);
  EXPECT_NEAR(p.probabilities[1], 0.5, 1e-9);
}

TEST(LogReg, SingleClassRejected) {
  const auto d = dataset({{1}, {2}}, {1, 1}, 2);
  EXPECT_EQ(code_of([&] { logreg_train(d, {}); }), ErrorCode::kSingleClass);
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
  Xoshiro256 rng(21);
  Dataset d;
  d.cols = 3;
  d.classes = 3;
  for (int i = 0; i < 12; ++i) {
    std::vector<double> row{rng.normal(), rng.normal(), rng.normal()};
    d.add(row, i % 3);
  }
  const auto rows = all_rows(d);
  for (Activation act : {Activation::kTanh, Activation::kRelu}) {
    MlpSpec spec;
    spec.hidden = {5, 4};
    spec.activation = act;
    spec.seed = 9;
    auto model = mlp_init(3, 3, spec);
    const double l2 = 0.01;
    const auto grad = mlp_gradient(model, d, rows, l2);
    ASSERT_EQ(grad.size(), model.params.size());
    const double h = 1e-6;
    for (std::size_t i = 0; i < model.params.size(); ++i) {
      const double keep = model.params[i];
      model.params[i] = keep + h;
      const double up = mlp_loss(model, d, rows, l2);
      model.params[i] = keep - h;
      const double down = mlp_loss(model, d, rows, l2);
      model.params[i] = keep;
      const double numeric = (up - down) / (2 * h);
      EXPECT_LT(std::abs(numeric - grad[i]) / std::max(1.0, std::abs(numeric)), 1e-4)
          << "param " << i;
    }
  }
}

TEST(Mlp, LearnsXor) {
  const auto d = dataset({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0}, 2);
  MlpSpec spec;
  spec.hidden = {8};
  spec.learning_rate = 0.1;
  spec.momentum = 0.9;
  spec.batch_size = 4;
  spec.epochs = 5000;
  spec.seed = 1;
  const auto model = mlp_train(d, spec);
  for (std::size_t r = 0; r < d.rows(); ++r) EXPECT_EQ(mlp_predict(model, d.row(r)).label, d.y[r]);
}

TEST(Mlp, DeterministicForSeed) {
  const auto m = blobs(20, 3);
  const auto d = to_dataset(m, Task::kThreeClass);
  const auto spec = MlpSpec::dnn();
  EXPECT_EQ(mlp_train(d, spec).params, mlp_train(d, spec).params);
  auto other = spec;
  other.seed = 2;
  EXPECT_NE(mlp_train(d, other).params, mlp_train(d, spec).params);
}

TEST(Mlp, SpecValidation) {
  MlpSpec s;
  s.batch_size = 0;
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::kBadSpec);
  s = {};
  s.hidden = {4, 0};
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::kBadSpec);
  s = {};
  s.learning_rate = -1;
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::kBadSpec);
}

TEST(CrossValidate, SeparableBlobsAndDeterminism) {
  const auto m = blobs(30, 11, 0.3);
  CvConfig cfg;
  cfg.folds = 5;
  cfg.repetitions = 3;
  cfg.seed = 42;
  for (ModelKind kind : {ModelKind::kKnn, ModelKind::kLogReg, ModelKind::kMlp}) {
    ModelSpec spec;
    spec.name = "m";
    spec.kind = kind;
    spec.mlp = MlpSpec::ann();
    spec.mlp.epochs = 50;
    const auto rep = cross_validate(m, spec, cfg);
    ASSERT_EQ(rep.repetition_metrics.size(), 3u);
    ASSERT_EQ(rep.fold_confusion.size(), 3u);
    EXPECT_EQ(rep.fold_confusion[0].size(), 5u);
    for (const auto& cm : rep.repetition_confusion) EXPECT_EQ(cm.total(), m.rows());
    EXPECT_GT(rep.mean.accuracy, 0.95);
    const auto again = cross_validate(m, spec, cfg);
    EXPECT_EQ(again.repetition_confusion, rep.repetition_confusion);
  }
}

TEST(CrossValidate, TwoClassAndSelection) {
  const auto m = blobs(20, 4);
  CvConfig cfg;
  cfg.repetitions = 2;
  cfg.seed = 7;
  cfg.task = Task::kTwoClass;
  cfg.select_k = 2;
  ModelSpec spec;
  spec.kind = ModelKind::kLogReg;
  spec.use_selection = true;
  const auto rep = cross_validate(m, spec, cfg);
  EXPECT_EQ(rep.task, Task::kTwoClass);
  EXPECT_EQ(rep.repetition_confusion[0].classes(), 2);
  EXPECT_EQ(rep.repetition_confusion[0].total(), 60u);
  EXPECT_GE(rep.stddev.accuracy, 0.0);
}

}  // namespace
}  // namespace graphts
