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
#include <string>

#include "graphts/error.hpp"
#include "graphts/random.hpp"

namespace graphts {

int class_count(Task task) { return task == Task::kTwoClass ? 2 : 3; }

int target_for(ClassLabel label, Task task) {
  if (task == Task::kTwoClass) return label == ClassLabel::kHealthy ? 0 : 1;
  return static_cast<int>(label);
}

std::string_view class_name(int target, Task task) {
  if (task == Task::kTwoClass) return target == 0 ? "H" : "P";
  return to_string(static_cast<ClassLabel>(target));
}

std::string_view to_string(Task task) {
  return task == Task::kTwoClass ? "two_class" : "three_class";
}

Task parse_task(std::string_view text) {
  if (text == "two_class") return Task::kTwoClass;
  if (text == "three_class") return Task::kThreeClass;
  throw Error(ErrorCode::kBadSpec, "unknown task '" + std::string(text) + "'");
}

void Dataset::add(std::span<const double> features, int target) {
  if (rows() == 0 && cols == 0) cols = features.size();
  if (features.size() != cols) {
    throw Error(ErrorCode::kSchemaMismatch, "row width differs from dataset");
  }
  x.insert(x.end(), features.begin(), features.end());
  y.push_back(target);
  classes = std::max(classes, target + 1);
}

Dataset to_dataset(const FeatureMatrix& m, Task task) {
  Dataset d;
  d.cols = m.cols();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    d.add(m.row(r), target_for(m.labels()[r], task));
  }
  d.classes = class_count(task);
  return d;
}

// ---------------------------------------------------------------------------
// Confusion matrix and metrics

ConfusionMatrix::ConfusionMatrix(int classes)
    : classes_(classes),
      counts_(static_cast<std::size_t>(classes) * static_cast<std::size_t>(classes),
              0) {}

void ConfusionMatrix::add(int truth, int predicted, std::size_t count) {
  if (truth < 0 || truth >= classes_ || predicted < 0 || predicted >= classes_) {
    throw Error(ErrorCode::kInvalidParams, "class index outside confusion matrix");
  }
  counts_[static_cast<std::size_t>(truth * classes_ + predicted)] += count;
}

std::size_t ConfusionMatrix::at(int truth, int predicted) const {
  return counts_[static_cast<std::size_t>(truth * classes_ + predicted)];
}

std::size_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (int c = 0; c < classes_; ++c) t += at(c, c);
  return t;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (other.classes_ != classes_) {
    throw Error(ErrorCode::kInvalidParams, "confusion matrices differ in size");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

BinaryCounts one_vs_rest(const ConfusionMatrix& cm, int positive) {
  BinaryCounts b;
  for (int t = 0; t < cm.classes(); ++t) {
    for (int p = 0; p < cm.classes(); ++p) {
      const std::size_t n = cm.at(t, p);
      if (t == positive && p == positive) b.tp += n;
      else if (t == positive) b.fn += n;
      else if (p == positive) b.fp += n;
      else b.tn += n;
    }
  }
  return b;
}

namespace {

double ratio(std::size_t num, std::size_t den, bool& zero_flag) {
  if (den == 0) {
    zero_flag = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) {
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

Metrics evaluate_binary(const BinaryCounts& c) {
  Metrics m;
  m.accuracy = ratio(c.tp + c.tn, c.tp + c.fp + c.tn + c.fn, m.zero_denominator);
  m.precision = ratio(c.tp, c.tp + c.fp, m.zero_denominator);
  m.recall = ratio(c.tp, c.tp + c.fn, m.zero_denominator);
  m.f_score = harmonic(m.precision, m.recall);
  m.specificity = ratio(c.tn, c.tn + c.fp, m.zero_denominator);
  return m;
}

Metrics evaluate(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw Error(ErrorCode::kEmptyMatrix, "confusion matrix is empty");
  Metrics m;
  m.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
  for (int c = 0; c < cm.classes(); ++c) {
    const Metrics per = evaluate_binary(one_vs_rest(cm, c));
    m.precision += per.precision;
    m.recall += per.recall;
    m.specificity += per.specificity;
    m.zero_denominator = m.zero_denominator || per.zero_denominator;
  }
  const auto k = static_cast<double>(cm.classes());
  m.precision /= k;
  m.recall /= k;
  m.specificity /= k;
  m.f_score = harmonic(m.precision, m.recall);
  return m;
}

// ---------------------------------------------------------------------------
// Folds

std::vector<std::size_t> FoldAssignment::test_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldAssignment::train_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) rows.push_back(i);
  }
  return rows;
}

FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k,
                                std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kBadK, "need at least 2 folds");
  int max_label = -1;
  for (int l : labels) {
    if (l < 0) throw Error(ErrorCode::kInvalidParams, "negative class label");
    max_label = std::max(max_label, l);
  }
  std::vector<std::vector<std::size_t>> members(
      static_cast<std::size_t>(max_label + 1));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(i);
  }

  FoldAssignment out;
  out.k = k;
  out.seed = seed;
  out.fold_of.assign(labels.size(), 0);
  Xoshiro256 rng(seed);
  std::size_t deal = 0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& rows = members[c];
    if (rows.empty()) continue;
    if (rows.size() < k) {
      throw Error(ErrorCode::kClassTooSmall,
                  "class " + std::to_string(c) + " has " +
                      std::to_string(rows.size()) + " rows, fewer than " +
                      std::to_string(k) + " folds");
    }
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[rng.below(i)]);
    }
    for (std::size_t row : rows) out.fold_of[row] = deal++ % k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// k-nearest neighbors

int knn_predict(const Dataset& train, std::size_t k,
                std::span<const double> query) {
  const std::size_t m = train.rows();
  if (k < 1 || k > m) {
    throw Error(ErrorCode::kBadK, "k = " + std::to_string(k) + " with " +
                                      std::to_string(m) + " training rows");
  }
  std::vector<std::pair<double, std::size_t>> dist(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto row = train.row(r);
    double d = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double diff = row[c] - query[c];
      d += diff * diff;
    }
    dist[r] = {d, r};
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                    dist.end());
  std::vector<std::size_t> votes(static_cast<std::size_t>(train.classes), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = static_cast<std::size_t>(train.y[dist[i].second]);
    best = std::max(best, ++votes[c]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    const int c = train.y[dist[i].second];
    if (votes[static_cast<std::size_t>(c)] == best) return c;
  }
  return train.y[dist[0].second];
}

// ---------------------------------------------------------------------------
// Softmax helpers

namespace {

void softmax_in_place(std::span<double> z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

int argmax(std::span<const double> p) {
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::size_t distinct_classes(const Dataset& d) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(d.classes, 1)), false);
  std::size_t n = 0;
  for (int y : d.y) {
    if (!seen[static_cast<std::size_t>(y)]) {
      seen[static_cast<std::size_t>(y)] = true;
      ++n;
    }
  }
  return n;
}

void require_classes(const Dataset& d) {
  if (distinct_classes(d) < 2) {
    throw Error(ErrorCode::kSingleClass, "training data holds fewer than two classes");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Logistic regression

LogRegModel logreg_train(const Dataset& train, const LogRegSpec& spec) {
  require_classes(train);
  if (!(spec.learning_rate > 0.0) || !(spec.l2 >= 0.0)) {
    throw Error(ErrorCode::kBadSpec, "logistic regression hyperparameters");
  }
  LogRegModel model;
  model.classes = train.classes;
  model.cols = train.cols;
  const auto k = static_cast<std::size_t>(model.classes);
  const std::size_t d = model.cols;
  model.weights.assign(k * d, 0.0);
  model.bias.assign(k, 0.0);

  const auto m = static_cast<double>(train.rows());
  std::vector<double> grad_w(k * d), grad_b(k), z(k);
  for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    double loss = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const auto x = train.row(r);
      for (std::size_t c = 0; c < k; ++c) {
        double s = model.bias[c];
        for (std::size_t j = 0; j < d; ++j) s += model.weights[c * d + j] * x[j];
        z[c] = s;
      }
      softmax_in_place(z);
      const auto y = static_cast<std::size_t>(train.y[r]);
      loss -= std::log(std::max(z[y], 1e-300));
      for (std::size_t c = 0; c < k; ++c) {
        const double delta = z[c] - (c == y ? 1.0 : 0.0);
        grad_b[c] += delta;
        for (std::size_t j = 0; j < d; ++j) grad_w[c * d + j] += delta * x[j];
      }
    }
    double penalty = 0.0;
    for (double w : model.weights) penalty += w * w;
    loss = loss / m + 0.5 * spec.l2 * penalty;
    if (!model.loss_history.empty() &&
        loss > model.loss_history.back() * (1.0 + 1e-12)) {
      model.diverged = true;
    }
    model.loss_history.push_back(loss);

    for (std::size_t i = 0; i < k * d; ++i) {
      model.weights[i] -=
          spec.learning_rate * (grad_w[i] / m + spec.l2 * model.weights[i]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      model.bias[c] -= spec.learning_rate * grad_b[c] / m;
    }
  }
  return model;
}

Prediction logreg_predict(const LogRegModel& model,
                          std::span<const double> query) {
  Prediction p;
  const auto k = static_cast<std::size_t>(model.classes);
  p.probabilities.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    double s = model.bias[c];
    for (std::size_t j = 0; j < model.cols; ++j) {
      s += model.weights[c * model.cols + j] * query[j];
    }
    p.probabilities[c] = s;
  }
  softmax_in_place(p.probabilities);
  p.label = argmax(p.probabilities);
  return p;
}

// ---------------------------------------------------------------------------
// Multilayer perceptron

MlpSpec MlpSpec::ann() {
  MlpSpec s;
  s.hidden = {16};
  return s;
}

MlpSpec MlpSpec::dnn() {
  MlpSpec s;
  s.hidden = {32, 16};
  return s;
}

void MlpSpec::validate() const {
  if (std::any_of(hidden.begin(), hidden.end(), [](std::size_t h) { return h == 0; })) {
    throw Error(ErrorCode::kBadSpec, "hidden layer sizes must be positive");
  }
  if (!(learning_rate > 0.0) || !(momentum >= 0.0 && momentum < 1.0) ||
      epochs == 0 || batch_size == 0 || !(l2 >= 0.0)) {
    throw Error(ErrorCode::kBadSpec, "invalid MLP hyperparameters");
  }
}

std::size_t MlpModel::weight_offset(std::size_t layer) const {
  std::size_t off = 0;
  for (std::size_t l = 0; l < layer; ++l) {
    off += (layer_sizes[l] + 1) * layer_sizes[l + 1];
  }
  return off;
}

std::size_t MlpModel::bias_offset(std::size_t layer) const {
  return weight_offset(layer) + layer_sizes[layer] * layer_sizes[layer + 1];
}

MlpModel mlp_init(std::size_t inputs, int classes, const MlpSpec& spec) {
  spec.validate();
  MlpModel model;
  model.activation = spec.activation;
  model.layer_sizes.push_back(inputs);
  model.layer_sizes.insert(model.layer_sizes.end(), spec.hidden.begin(),
                           spec.hidden.end());
  model.layer_sizes.push_back(static_cast<std::size_t>(classes));
  model.params.assign(model.weight_offset(model.layers()), 0.0);
  Xoshiro256 rng(spec.seed);
  for (std::size_t l = 0; l < model.layers(); ++l) {
    const std::size_t in = model.layer_sizes[l];
    const std::size_t out = model.layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    const std::size_t w = model.weight_offset(l);
    for (std::size_t i = 0; i < in * out; ++i) {
      model.params[w + i] = rng.uniform(-limit, limit);
    }
  }
  return model;
}

namespace {

double activate(Activation a, double z) {
  return a == Activation::kTanh ? std::tanh(z) : std::max(z, 0.0);
}

// Derivative expressed through the activation output.
double activate_grad(Activation a, double out) {
  return a == Activation::kTanh ? 1.0 - out * out : (out > 0.0 ? 1.0 : 0.0);
}

// Per-layer outputs; the last entry holds softmax probabilities.
std::vector<std::vector<double>> forward(const MlpModel& model,
                                         std::span<const double> x) {
  std::vector<std::vector<double>> acts;
  acts.emplace_back(x.begin(), x.end());
  for (std::size_t l = 0; l < model.layers(); ++l) {
    const std::size_t in = model.layer_sizes[l];
    const std::size_t out = model.layer_sizes[l + 1];
    const double* w = model.params.data() + model.weight_offset(l);
    const double* b = model.params.data() + model.bias_offset(l);
    const auto& prev = acts.back();
    std::vector<double> z(out);
    for (std::size_t o = 0; o < out; ++o) {
      double s = b[o];
      for (std::size_t i = 0; i < in; ++i) s += w[o * in + i] * prev[i];
      z[o] = s;
    }
    if (l + 1 == model.layers()) {
      softmax_in_place(z);
    } else {
      for (double& v : z) v = activate(model.activation, v);
    }
    acts.push_back(std::move(z));
  }
  return acts;
}

double weight_penalty(const MlpModel& model) {
  double s = 0.0;
  for (std::size_t l = 0; l < model.layers(); ++l) {
    const std::size_t w = model.weight_offset(l);
    const std::size_t b = model.bias_offset(l);
    for (std::size_t i = w; i < b; ++i) s += model.params[i] * model.params[i];
  }
  return s;
}

void accumulate_gradient(const MlpModel& model, const Dataset& data,
                         std::span<const std::size_t> rows, double l2,
                         std::vector<double>& grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (std::size_t r : rows) {
    const auto acts = forward(model, data.row(r));
    std::vector<double> delta = acts.back();
    delta[static_cast<std::size_t>(data.y[r])] -= 1.0;
    for (std::size_t l = model.layers(); l-- > 0;) {
      const std::size_t in = model.layer_sizes[l];
      const std::size_t out = model.layer_sizes[l + 1];
      const std::size_t w = model.weight_offset(l);
      const std::size_t b = model.bias_offset(l);
      const auto& prev = acts[l];
      for (std::size_t o = 0; o < out; ++o) {
        const double d = delta[o] * inv;
        grad[b + o] += d;
        for (std::size_t i = 0; i < in; ++i) grad[w + o * in + i] += d * prev[i];
      }
      if (l == 0) break;
      std::vector<double> back(in, 0.0);
      for (std::size_t o = 0; o < out; ++o) {
        for (std::size_t i = 0; i < in; ++i) {
          back[i] += model.params[w + o * in + i] * delta[o];
        }
      }
      for (std::size_t i = 0; i < in; ++i) {
        back[i] *= activate_grad(model.activation, prev[i]);
      }
      delta = std::move(back);
    }
  }
  if (l2 > 0.0) {
    for (std::size_t l = 0; l < model.layers(); ++l) {
      for (std::size_t i = model.weight_offset(l); i < model.bias_offset(l); ++i) {
        grad[i] += l2 * model.params[i];
      }
    }
  }
}

}  // namespace

double mlp_loss(const MlpModel& model, const Dataset& data,
                std::span<const std::size_t> rows, double l2) {
  double loss = 0.0;
  for (std::size_t r : rows) {
    const auto acts = forward(model, data.row(r));
    loss -= std::log(std::max(acts.back()[static_cast<std::size_t>(data.y[r])], 1e-300));
  }
  loss /= static_cast<double>(rows.size());
  return loss + 0.5 * l2 * weight_penalty(model);
}

std::vector<double> mlp_gradient(const MlpModel& model, const Dataset& data,
                                 std::span<const std::size_t> rows, double l2) {
  std::vector<double> grad(model.params.size());
  accumulate_gradient(model, data, rows, l2, grad);
  return grad;
}

MlpModel mlp_train(const Dataset& train, const MlpSpec& spec) {
  spec.validate();
  require_classes(train);
  MlpModel model = mlp_init(train.cols, train.classes, spec);
  // Separate stream for batch order so the weights match mlp_init exactly.
  Xoshiro256 rng(spec.seed ^ 0x5851f42d4c957f2dULL);
  std::vector<std::size_t> order(train.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(model.params.size());
  std::vector<double> velocity(model.params.size(), 0.0);
  for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
    for (std::size_t start = 0; start < order.size(); start += spec.batch_size) {
      const std::size_t end = std::min(order.size(), start + spec.batch_size);
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      accumulate_gradient(model, train, batch, spec.l2, grad);
      for (std::size_t p = 0; p < model.params.size(); ++p) {
        velocity[p] = spec.momentum * velocity[p] - spec.learning_rate * grad[p];
        model.params[p] += velocity[p];
      }
    }
  }
  return model;
}

Prediction mlp_predict(const MlpModel& model, std::span<const double> query) {
  Prediction p;
  p.probabilities = forward(model, query).back();
  p.label = argmax(p.probabilities);
  return p;
}

// ---------------------------------------------------------------------------
// Generic training and cross-validation

TrainedModel train_model(const Dataset& train, const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::kKnn:
      if (spec.knn_k < 1 || spec.knn_k > train.rows()) {
        throw Error(ErrorCode::kBadK, "knn k = " + std::to_string(spec.knn_k));
      }
      return KnnModel{train, spec.knn_k};
    case ModelKind::kLogReg:
      return logreg_train(train, spec.logreg);
    case ModelKind::kMlp:
      return mlp_train(train, spec.mlp);
  }
  throw Error(ErrorCode::kBadSpec, "unknown model kind");
}

int predict(const TrainedModel& model, std::span<const double> query) {
  if (const auto* knn = std::get_if<KnnModel>(&model)) {
    return knn_predict(knn->train, knn->k, query);
  }
  if (const auto* lr = std::get_if<LogRegModel>(&model)) {
    return logreg_predict(*lr, query).label;
  }
  return mlp_predict(std::get<MlpModel>(model), query).label;
}

CvReport cross_validate(const FeatureMatrix& matrix, const ModelSpec& spec,
                        const CvConfig& cfg) {
  if (cfg.repetitions == 0) {
    throw Error(ErrorCode::kBadSpec, "cross-validation needs >= 1 repetition");
  }
  const int classes = class_count(cfg.task);
  std::vector<int> targets(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    targets[r] = target_for(matrix.labels()[r], cfg.task);
  }

  CvReport report;
  report.model = spec.name;
  report.task = cfg.task;
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t rep_seed = cfg.seed + rep;
    const FoldAssignment folds = stratified_kfold(targets, cfg.folds, rep_seed);
    ModelSpec fold_spec = spec;
    fold_spec.mlp.seed = rep_seed;

    ConfusionMatrix pooled(classes);
    std::vector<ConfusionMatrix> per_fold;
    for (std::size_t f = 0; f < cfg.folds; ++f) {
      const auto train_rows = folds.train_rows(f);
      const auto test_rows = folds.test_rows(f);
      FeatureMatrix train = matrix.select_rows(train_rows);
      FeatureMatrix test = matrix.select_rows(test_rows);

      if (spec.use_selection && cfg.select_k < train.cols()) {
        std::vector<int> groups(train.rows());
        for (std::size_t r = 0; r < train.rows(); ++r) {
          groups[r] = target_for(train.labels()[r], cfg.task);
        }
        std::vector<double> f_values(train.cols());
        for (std::size_t c = 0; c < train.cols(); ++c) {
          f_values[c] = anova_f(train.column(c), groups).f;
        }
        const auto keep = select_features(f_values, cfg.select_k);
        train = train.select_columns(keep);
        test = test.select_columns(keep);
      }
      const Standardizer scaler = Standardizer::fit(train);
      const Dataset train_set = to_dataset(scaler.apply(train), cfg.task);
      const Dataset test_set = to_dataset(scaler.apply(test), cfg.task);
      const TrainedModel model = train_model(train_set, fold_spec);

      ConfusionMatrix cm(classes);
      for (std::size_t r = 0; r < test_set.rows(); ++r) {
        cm.add(test_set.y[r], predict(model, test_set.row(r)));
      }
      pooled += cm;
      per_fold.push_back(std::move(cm));
    }
    report.repetition_metrics.push_back(evaluate(pooled));
    report.repetition_confusion.push_back(std::move(pooled));
    report.fold_confusion.push_back(std::move(per_fold));
  }

  auto field = [](Metrics& m, int i) -> double& {
    switch (i) {
      case 0: return m.accuracy;
      case 1: return m.precision;
      case 2: return m.recall;
      case 3: return m.f_score;
      default: return m.specificity;
    }
  };
  const auto n = static_cast<double>(report.repetition_metrics.size());
  for (int i = 0; i < 5; ++i) {
    double sum = 0.0;
    for (auto m : report.repetition_metrics) sum += field(m, i);
    const double mean = sum / n;
    double ss = 0.0;
    for (auto m : report.repetition_metrics) {
      const double d = field(m, i) - mean;
      ss += d * d;
    }
    field(report.mean, i) = mean;
    field(report.stddev, i) = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  }
  for (const auto& m : report.repetition_metrics) {
    report.mean.zero_denominator = report.mean.zero_denominator || m.zero_denominator;
  }
  return report;
}

}  // namespace graphts
