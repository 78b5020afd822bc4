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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graphts/features.hpp"
#include "graphts/series.hpp"

namespace graphts {

// two_class collapses Myopathy and Neuropathy into a single Patient class.
enum class Task { kTwoClass, kThreeClass };

int class_count(Task task);
int target_for(ClassLabel label, Task task);
std::string_view class_name(int target, Task task);
std::string_view to_string(Task task);
Task parse_task(std::string_view text);

// Numeric design matrix with integer targets in [0, classes).
struct Dataset {
  std::size_t cols = 0;
  std::vector<double> x;  // row-major
  std::vector<int> y;
  int classes = 0;

  std::size_t rows() const { return y.size(); }
  std::span<const double> row(std::size_t r) const {
    return {x.data() + r * cols, cols};
  }
  void add(std::span<const double> features, int target);
};

Dataset to_dataset(const FeatureMatrix& m, Task task);

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(int classes);

  int classes() const { return classes_; }
  void add(int truth, int predicted, std::size_t count = 1);
  std::size_t at(int truth, int predicted) const;
  std::size_t total() const;
  std::size_t trace() const;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  int classes_ = 0;
  std::vector<std::size_t> counts_;
};

struct BinaryCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

BinaryCounts one_vs_rest(const ConfusionMatrix& cm, int positive);

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  double specificity = 0.0;
  // Some ratio had a zero denominator and was taken as 0.
  bool zero_denominator = false;
};

// Accuracy, precision, recall, F-score (harmonic mean of precision and
// recall) and specificity of a single positive class.
Metrics evaluate_binary(const BinaryCounts& counts);

// Accuracy from the trace; precision, recall and specificity one-vs-rest per
// class then macro-averaged; F-score from the macro precision and recall.
// Throws kEmptyMatrix when the matrix holds no samples.
Metrics evaluate(const ConfusionMatrix& cm);

struct FoldAssignment {
  std::vector<std::size_t> fold_of;
  std::size_t k = 0;
  std::uint64_t seed = 0;

  std::vector<std::size_t> test_rows(std::size_t fold) const;
  std::vector<std::size_t> train_rows(std::size_t fold) const;
};

// Rows of each class (ascending class id) are shuffled with one Xoshiro256
// stream and dealt round-robin, the dealing position carrying over from one
// class to the next so both per-class and overall fold sizes differ by at
// most one. Throws kClassTooSmall when a class has fewer than k rows.
FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k,
                                std::uint64_t seed);

// Majority vote of the k nearest rows by Euclidean distance. Distance ties
// go to the lower row index; vote ties go to the tied class met first in
// distance order. Throws kBadK unless 1 <= k <= rows.
int knn_predict(const Dataset& train, std::size_t k,
                std::span<const double> query);

struct Prediction {
  int label = 0;
  std::vector<double> probabilities;
};

struct LogRegSpec {
  double learning_rate = 0.5;
  std::size_t epochs = 500;
  double l2 = 1e-4;
};

struct LogRegModel {
  int classes = 0;
  std::size_t cols = 0;
  std::vector<double> weights;  // classes x cols
  std::vector<double> bias;
  std::vector<double> loss_history;  // objective before each epoch's update
  bool diverged = false;             // objective increased at some epoch
};

// Multinomial softmax regression, full-batch gradient descent from zero
// weights. Throws kSingleClass when fewer than two classes are present.
LogRegModel logreg_train(const Dataset& train, const LogRegSpec& spec);
Prediction logreg_predict(const LogRegModel& model,
                          std::span<const double> query);

enum class Activation { kTanh, kRelu };

struct MlpSpec {
  std::vector<std::size_t> hidden{16};
  Activation activation = Activation::kTanh;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::size_t epochs = 200;
  std::size_t batch_size = 16;
  double l2 = 0.0;
  std::uint64_t seed = 1;

  static MlpSpec ann();  // one hidden layer of 16
  static MlpSpec dnn();  // hidden layers 32, 16
  void validate() const;  // throws kBadSpec
};

// Fully connected network; parameters stored flat, layer by layer, each as
// an (out x in) weight block followed by its bias.
struct MlpModel {
  std::vector<std::size_t> layer_sizes;  // input, hidden..., classes
  Activation activation = Activation::kTanh;
  std::vector<double> params;

  std::size_t layers() const { return layer_sizes.size() - 1; }
  std::size_t weight_offset(std::size_t layer) const;
  std::size_t bias_offset(std::size_t layer) const;
};

// Xavier-uniform weights drawn from Xoshiro256(spec.seed), zero biases.
MlpModel mlp_init(std::size_t inputs, int classes, const MlpSpec& spec);

// Mean cross-entropy over `rows` plus 0.5 * l2 * sum of squared weights.
double mlp_loss(const MlpModel& model, const Dataset& data,
                std::span<const std::size_t> rows, double l2);
// Gradient of mlp_loss with respect to model.params.
std::vector<double> mlp_gradient(const MlpModel& model, const Dataset& data,
                                 std::span<const std::size_t> rows, double l2);

// Mini-batch gradient descent with momentum; batches reshuffled every epoch
// from the spec seed. Throws kSingleClass / kBadSpec.
MlpModel mlp_train(const Dataset& train, const MlpSpec& spec);
Prediction mlp_predict(const MlpModel& model, std::span<const double> query);

enum class ModelKind { kKnn, kLogReg, kMlp };

struct ModelSpec {
  std::string name;
  ModelKind kind = ModelKind::kKnn;
  std::size_t knn_k = 5;
  LogRegSpec logreg;
  MlpSpec mlp;
  // Restrict inputs to the ANOVA-selected columns (chosen on training rows).
  bool use_selection = false;
};

struct KnnModel {
  Dataset train;
  std::size_t k = 1;
};

using TrainedModel = std::variant<KnnModel, LogRegModel, MlpModel>;

TrainedModel train_model(const Dataset& train, const ModelSpec& spec);
int predict(const TrainedModel& model, std::span<const double> query);

struct CvConfig {
  std::size_t folds = 5;
  std::size_t repetitions = 20;
  std::uint64_t seed = 0;
  Task task = Task::kThreeClass;
  std::size_t select_k = 3;  // used by specs with use_selection
};

struct CvReport {
  std::string model;
  Task task = Task::kThreeClass;
  std::vector<ConfusionMatrix> repetition_confusion;  // summed over folds
  std::vector<Metrics> repetition_metrics;
  std::vector<std::vector<ConfusionMatrix>> fold_confusion;
  Metrics mean;
  Metrics stddev;  // sample std over repetitions (0 for one repetition)
};

// Repetition r uses fold seed cfg.seed + r and, for MLPs, model seed
// cfg.seed + r. Standardization (and feature selection, when enabled) is fit
// on the training folds only. Metrics for a repetition come from the summed
// out-of-fold confusion matrix.
CvReport cross_validate(const FeatureMatrix& matrix, const ModelSpec& spec,
                        const CvConfig& cfg);

}  // namespace graphts
