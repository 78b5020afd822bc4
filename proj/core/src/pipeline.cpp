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

#include "graphts/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "graphts/error.hpp"

namespace graphts {

namespace fs = std::filesystem;

namespace {

const char* kLabels[] = {"H", "M", "N"};

std::vector<std::size_t> parse_sizes(const std::string& key,
                                     const std::vector<std::string>& items) {
  std::vector<std::size_t> out;
  for (const auto& item : items) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0' || v == 0) {
      throw Error(ErrorCode::kConfigError,
                  "key '" + key + "': expected positive integers, got '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::map<std::string, std::string> build_defaults() {
  std::map<std::string, std::string> d = {
      {"input.source", "synthetic"},
      {"input.manifest", ""},
      {"synthetic.windows_per_class", "100"},
      {"synthetic.sampling_rate", "4000"},
      {"synthetic.duration_s", "2"},
      {"synthetic.seed", "1"},
      {"synthetic.noise_sigma", format_double(SynthParams{}.noise_sigma)},
      {"envelope.moving_average_len", "101"},
      {"envelope.filter_order", "2"},
      {"envelope.cutoff_hz", "50"},
      {"window.length", "200"},
      {"window.threshold_quantile", "0.95"},
      {"window.threshold_absolute", ""},
      {"window.max_per_series", "0"},
      {"graph.kind", "nvg"},
      {"graph.algorithm", "fast"},
      {"graph.community_seed", "0"},
      {"select.k", "3"},
      {"models", "knn,logreg,ann,dnn"},
      {"knn.k", "5"},
      {"knn.select", "true"},
      {"logreg.learning_rate", "0.5"},
      {"logreg.epochs", "500"},
      {"logreg.l2", "0.0001"},
      {"logreg.select", "true"},
      {"mlp.learning_rate", "0.05"},
      {"mlp.momentum", "0.9"},
      {"mlp.epochs", "200"},
      {"mlp.batch_size", "16"},
      {"mlp.l2", "0"},
      {"mlp.activation", "tanh"},
      {"ann.hidden", "16"},
      {"ann.select", "false"},
      {"dnn.hidden", "32,16"},
      {"dnn.select", "false"},
      {"cv.folds", "5"},
      {"cv.repetitions", "20"},
      {"cv.seed", ""},
      {"cv.task", "three_class"},
      {"export.graphml", "false"},
      {"export.dot", "false"},
      {"export.windows_csv", "true"},
      {"export.feature_csv", "true"},
      {"export.boxplot_json", "true"},
      {"export.report_json", "true"},
      {"output.dir", "graphts_out"},
      {"run.workers", "1"},
  };
  const SynthParams synth;
  for (int c = 0; c < kClassCount; ++c) {
    const BurstProfile& p = synth.profiles[static_cast<std::size_t>(c)];
    const std::string prefix = std::string("synthetic.") + kLabels[c] + ".";
    d[prefix + "amplitude_min"] = format_double(p.amplitude_min);
    d[prefix + "amplitude_max"] = format_double(p.amplitude_max);
    d[prefix + "length_min_ms"] = format_double(p.length_min_ms);
    d[prefix + "length_max_ms"] = format_double(p.length_max_ms);
    d[prefix + "phases_min"] = std::to_string(p.phases_min);
    d[prefix + "phases_max"] = std::to_string(p.phases_max);
    d[prefix + "rate_hz"] = format_double(p.rate_hz);
    d[prefix + "irregularity"] = format_double(p.irregularity);
  }
  return d;
}

template <typename T>
T checked_positive(const std::string& key, T value) {
  if (!(value > T{0})) {
    throw Error(ErrorCode::kConfigError, "key '" + key + "' must be positive");
  }
  return value;
}

// Re-labels stage errors that stem from configuration values.
template <typename Fn>
void as_config_error(const std::string& key, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, "key '" + key + "': " + e.what());
  }
}

}  // namespace

const std::map<std::string, std::string>& default_config_values() {
  static const std::map<std::string, std::string> defaults = build_defaults();
  return defaults;
}

ModelSpec model_from_config(const std::string& name, const Config& cfg) {
  ModelSpec spec;
  spec.name = name;
  const auto& d = default_config_values();
  auto dflt = [&](const std::string& key) { return d.at(key); };
  if (name == "knn") {
    spec.kind = ModelKind::kKnn;
    spec.knn_k = static_cast<std::size_t>(
        checked_positive<std::uint64_t>("knn.k", cfg.get_uint("knn.k", 5)));
  } else if (name == "logreg") {
    spec.kind = ModelKind::kLogReg;
    spec.logreg.learning_rate = checked_positive(
        "logreg.learning_rate", cfg.get_double("logreg.learning_rate", 0.5));
    spec.logreg.epochs = static_cast<std::size_t>(checked_positive<std::uint64_t>(
        "logreg.epochs", cfg.get_uint("logreg.epochs", 500)));
    spec.logreg.l2 = cfg.get_double("logreg.l2", 1e-4);
  } else if (name == "ann" || name == "dnn") {
    spec.kind = ModelKind::kMlp;
    spec.mlp = name == "ann" ? MlpSpec::ann() : MlpSpec::dnn();
    spec.mlp.hidden = parse_sizes(
        name + ".hidden",
        cfg.get_list(name + ".hidden", Config::parse(name + ".hidden = " +
                                                     dflt(name + ".hidden"))
                                           .get_list(name + ".hidden", {})));
    spec.mlp.learning_rate = checked_positive(
        "mlp.learning_rate", cfg.get_double("mlp.learning_rate", 0.05));
    spec.mlp.momentum = cfg.get_double("mlp.momentum", 0.9);
    spec.mlp.epochs = static_cast<std::size_t>(checked_positive<std::uint64_t>(
        "mlp.epochs", cfg.get_uint("mlp.epochs", 200)));
    spec.mlp.batch_size = static_cast<std::size_t>(checked_positive<std::uint64_t>(
        "mlp.batch_size", cfg.get_uint("mlp.batch_size", 16)));
    spec.mlp.l2 = cfg.get_double("mlp.l2", 0.0);
    const std::string act = cfg.get_string("mlp.activation", "tanh");
    if (act == "tanh") {
      spec.mlp.activation = Activation::kTanh;
    } else if (act == "relu") {
      spec.mlp.activation = Activation::kRelu;
    } else {
      throw Error(ErrorCode::kConfigError,
                  "key 'mlp.activation': expected tanh or relu, got '" + act + "'");
    }
    as_config_error("mlp", [&] { spec.mlp.validate(); });
  } else {
    throw Error(ErrorCode::kConfigError,
                "key 'models': unknown model '" + name +
                    "' (expected knn, logreg, ann, dnn)");
  }
  spec.use_selection = cfg.get_bool(name + ".select", dflt(name + ".select") == "true");
  return spec;
}

PipelineConfig PipelineConfig::from_config(const Config& cfg, bool require_seed) {
  const auto& defaults = default_config_values();
  std::set<std::string> known;
  for (const auto& [key, value] : defaults) known.insert(key);
  cfg.reject_unknown(known);

  PipelineConfig p;
  const std::string source = cfg.get_string("input.source", "synthetic");
  if (source == "synthetic") {
    p.source = Source::kSynthetic;
  } else if (source == "manifest") {
    p.source = Source::kManifest;
    p.manifest = cfg.require("input.manifest");
    if (!fs::exists(p.manifest)) {
      throw Error(ErrorCode::kConfigError,
                  "key 'input.manifest': '" + p.manifest.string() + "' does not exist");
    }
  } else {
    throw Error(ErrorCode::kConfigError,
                "key 'input.source': expected synthetic or manifest, got '" + source + "'");
  }

  p.synthetic_windows_per_class = static_cast<std::size_t>(checked_positive<std::uint64_t>(
      "synthetic.windows_per_class", cfg.get_uint("synthetic.windows_per_class", 100)));
  p.synthetic_sampling_rate = checked_positive(
      "synthetic.sampling_rate", cfg.get_double("synthetic.sampling_rate", 4000.0));
  p.synthetic_duration_s =
      checked_positive("synthetic.duration_s", cfg.get_double("synthetic.duration_s", 2.0));
  p.synthetic_seed = cfg.get_uint("synthetic.seed", 1);
  p.synth.noise_sigma = cfg.get_double("synthetic.noise_sigma", p.synth.noise_sigma);
  for (int c = 0; c < kClassCount; ++c) {
    BurstProfile& b = p.synth.profiles[static_cast<std::size_t>(c)];
    const std::string prefix = std::string("synthetic.") + kLabels[c] + ".";
    b.amplitude_min = cfg.get_double(prefix + "amplitude_min", b.amplitude_min);
    b.amplitude_max = cfg.get_double(prefix + "amplitude_max", b.amplitude_max);
    b.length_min_ms = cfg.get_double(prefix + "length_min_ms", b.length_min_ms);
    b.length_max_ms = cfg.get_double(prefix + "length_max_ms", b.length_max_ms);
    b.phases_min = static_cast<int>(cfg.get_int(prefix + "phases_min", b.phases_min));
    b.phases_max = static_cast<int>(cfg.get_int(prefix + "phases_max", b.phases_max));
    b.rate_hz = cfg.get_double(prefix + "rate_hz", b.rate_hz);
    b.irregularity = cfg.get_double(prefix + "irregularity", b.irregularity);
  }
  as_config_error("synthetic", [&] { p.synth.validate(); });

  const std::int64_t ma_len = cfg.get_int("envelope.moving_average_len", 101);
  if (ma_len < 1 || ma_len % 2 == 0) {
    throw Error(ErrorCode::kConfigError,
                "key 'envelope.moving_average_len' must be odd and >= 1");
  }
  p.envelope.moving_average_len = static_cast<std::size_t>(ma_len);
  p.envelope.filter_order = static_cast<int>(cfg.get_int("envelope.filter_order", 2));
  if (p.envelope.filter_order < 1 || p.envelope.filter_order > 8) {
    throw Error(ErrorCode::kConfigError, "key 'envelope.filter_order' must be in [1, 8]");
  }
  p.envelope.cutoff_hz =
      checked_positive("envelope.cutoff_hz", cfg.get_double("envelope.cutoff_hz", 50.0));
  if (p.source == Source::kSynthetic) {
    as_config_error("envelope.cutoff_hz",
                    [&] { p.envelope.validate(p.synthetic_sampling_rate); });
  }

  p.window_length = static_cast<std::size_t>(
      checked_positive<std::uint64_t>("window.length", cfg.get_uint("window.length", 200)));
  if (!cfg.get_string("window.threshold_absolute", "").empty()) {
    p.threshold = Threshold::absolute(checked_positive(
        "window.threshold_absolute", cfg.get_double("window.threshold_absolute", 0.0)));
  } else {
    const double q = cfg.get_double("window.threshold_quantile", 0.95);
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorCode::kConfigError, "key 'window.threshold_quantile' must be in [0, 1]");
    }
    p.threshold = Threshold::quantile(q);
  }
  p.max_windows_per_series = static_cast<std::size_t>(cfg.get_uint("window.max_per_series", 0));

  const std::string kind = cfg.get_string("graph.kind", "nvg");
  if (kind == "nvg") {
    p.graph_kind = GraphKind::kNvg;
  } else if (kind == "hvg") {
    p.graph_kind = GraphKind::kHvg;
  } else {
    throw Error(ErrorCode::kConfigError, "key 'graph.kind': expected nvg or hvg");
  }
  const std::string algo = cfg.get_string("graph.algorithm", "fast");
  if (algo == "fast") {
    p.nvg_algorithm = NvgAlgorithm::kFast;
  } else if (algo == "naive") {
    p.nvg_algorithm = NvgAlgorithm::kNaive;
  } else {
    throw Error(ErrorCode::kConfigError, "key 'graph.algorithm': expected fast or naive");
  }
  p.community_seed = cfg.get_uint("graph.community_seed", 0);

  p.select_k = static_cast<std::size_t>(cfg.get_uint("select.k", 3));
  if (p.select_k < 1 || p.select_k > kFeatureCount) {
    throw Error(ErrorCode::kConfigError, "key 'select.k' must be in [1, 7]");
  }
  const auto model_names = cfg.get_list("models", {"knn", "logreg", "ann", "dnn"});
  if (model_names.empty()) {
    throw Error(ErrorCode::kConfigError, "key 'models' lists no models");
  }
  for (const auto& name : model_names) p.models.push_back(model_from_config(name, cfg));

  const std::string task = cfg.get_string("cv.task", "three_class");
  if (task == "three_class") {
    p.tasks = {Task::kThreeClass};
  } else if (task == "two_class") {
    p.tasks = {Task::kTwoClass};
  } else if (task == "both") {
    p.tasks = {Task::kTwoClass, Task::kThreeClass};
  } else {
    throw Error(ErrorCode::kConfigError,
                "key 'cv.task': expected three_class, two_class or both");
  }
  p.cv_folds = static_cast<std::size_t>(cfg.get_uint("cv.folds", 5));
  if (p.cv_folds < 2) throw Error(ErrorCode::kConfigError, "key 'cv.folds' must be >= 2");
  p.cv_repetitions = static_cast<std::size_t>(checked_positive<std::uint64_t>(
      "cv.repetitions", cfg.get_uint("cv.repetitions", 20)));
  if (require_seed) cfg.require("cv.seed");
  p.cv_seed = cfg.get_uint("cv.seed", 0);

  p.export_graphml = cfg.get_bool("export.graphml", false);
  p.export_dot = cfg.get_bool("export.dot", false);
  p.export_windows_csv = cfg.get_bool("export.windows_csv", true);
  p.export_feature_csv = cfg.get_bool("export.feature_csv", true);
  p.export_boxplot_json = cfg.get_bool("export.boxplot_json", true);
  p.export_report_json = cfg.get_bool("export.report_json", true);
  p.output_dir = cfg.get_string("output.dir", "graphts_out");
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) p.output_dir = env;

  p.workers = static_cast<std::size_t>(
      checked_positive<std::uint64_t>("run.workers", cfg.get_uint("run.workers", 1)));

  // Echo excludes output.dir and run.workers: neither changes results.
  for (const auto& [key, value] : defaults) {
    if (key == "output.dir" || key == "run.workers") continue;
    p.echo[key] = cfg.get_string(key, value);
  }
  return p;
}

std::vector<Window> windows_from_series(const TimeSeries& ts,
                                        const PipelineConfig& cfg) {
  const TimeSeries envelope = linear_envelope(ts, cfg.envelope);
  std::vector<Window> windows = detect_windows(ts, cfg.threshold, cfg.window_length);
  if (cfg.max_windows_per_series > 0 && windows.size() > cfg.max_windows_per_series) {
    windows.resize(cfg.max_windows_per_series);
  }
  for (Window& w : windows) {
    const auto first = envelope.samples.begin() + static_cast<std::ptrdiff_t>(w.start_index);
    w.samples.assign(first, first + static_cast<std::ptrdiff_t>(cfg.window_length));
  }
  return windows;
}

std::vector<Window> collect_windows(const PipelineConfig& cfg, StageCounts& counts) {
  std::vector<Window> out;
  if (cfg.source == PipelineConfig::Source::kManifest) {
    const DatasetManifest manifest = load_manifest(cfg.manifest);
    const auto dataset = load_dataset(manifest, cfg.manifest.parent_path());
    counts.series = dataset.size();
    for (const TimeSeries& ts : dataset) {
      auto w = windows_from_series(ts, cfg);
      out.insert(out.end(), std::make_move_iterator(w.begin()),
                 std::make_move_iterator(w.end()));
    }
  } else {
    constexpr std::size_t kMaxSeriesPerClass = 10000;
    for (int c = 0; c < kClassCount; ++c) {
      const auto label = static_cast<ClassLabel>(c);
      std::size_t taken = 0;
      for (std::size_t i = 0; taken < cfg.synthetic_windows_per_class; ++i) {
        if (i == kMaxSeriesPerClass) {
          throw Error(ErrorCode::kEmptyInput,
                      "synthetic class " + std::string(to_string(label)) +
                          " yields too few windows");
        }
        const TimeSeries ts =
            synthesize_emg(label, cfg.synthetic_seed + i, cfg.synthetic_sampling_rate,
                           cfg.synthetic_duration_s, cfg.synth);
        ++counts.series;
        for (Window& w : windows_from_series(ts, cfg)) {
          if (taken == cfg.synthetic_windows_per_class) break;
          out.push_back(std::move(w));
          ++taken;
        }
      }
    }
  }
  counts.windows = out.size();
  return out;
}

GraphFeatures graph_features(const std::vector<Window>& windows,
                             const PipelineConfig& cfg, const fs::path& graph_dir) {
  const std::size_t n = windows.size();
  std::vector<MetricReport> metrics(n);
  std::vector<std::array<double, kFeatureCount>> rows(n);
  std::vector<std::exception_ptr> failures(n);
  if (!graph_dir.empty()) fs::create_directories(graph_dir);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        const VisibilityGraph g =
            build_graph(windows[i].samples, cfg.graph_kind, cfg.nvg_algorithm);
        metrics[i] = compute_metrics(g, cfg.community_seed);
        const MetricReport& r = metrics[i];
        rows[i] = {r.avg_degree,        r.avg_clustering,
                   r.transitivity,      r.density,
                   static_cast<double>(r.diameter), r.global_efficiency,
                   r.avg_shortest_path};
        if (!graph_dir.empty()) {
          char stem[32];
          std::snprintf(stem, sizeof(stem), "window_%05zu", i);
          if (cfg.export_graphml) {
            export_graph(g, graph_dir / (std::string(stem) + ".graphml"),
                         GraphFormat::kGraphml);
          }
          if (cfg.export_dot) {
            export_graph(g, graph_dir / (std::string(stem) + ".dot"), GraphFormat::kDot);
          }
        }
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.workers, n));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  GraphFeatures out{std::move(metrics),
                    FeatureMatrix({kFeatureNames.begin(), kFeatureNames.end()})};
  for (std::size_t i = 0; i < n; ++i) {
    if (!windows[i].label) {
      throw Error(ErrorCode::kUnlabeledRow,
                  "window " + std::to_string(i) + " of '" + windows[i].source_id +
                      "' has no label");
    }
    out.matrix.add_row(rows[i], *windows[i].label);
  }
  return out;
}

std::vector<CvReport> run_cross_validation(const FeatureMatrix& matrix,
                                           const PipelineConfig& cfg) {
  std::vector<CvReport> out;
  for (Task task : cfg.tasks) {
    for (const ModelSpec& spec : cfg.models) {
      CvConfig cv;
      cv.folds = cfg.cv_folds;
      cv.repetitions = cfg.cv_repetitions;
      cv.seed = cfg.cv_seed;
      cv.task = task;
      cv.select_k = cfg.select_k;
      out.push_back(cross_validate(matrix, spec, cv));
    }
  }
  return out;
}

nlohmann::json to_json(const Metrics& m) {
  return {{"accuracy", m.accuracy},     {"precision", m.precision},
          {"recall", m.recall},         {"f_score", m.f_score},
          {"specificity", m.specificity}, {"zero_denominator", m.zero_denominator}};
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
  nlohmann::json rows = nlohmann::json::array();
  for (int t = 0; t < cm.classes(); ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (int p = 0; p < cm.classes(); ++p) row.push_back(cm.at(t, p));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const MetricReport& r) {
  return {{"avg_degree", r.avg_degree},
          {"avg_clustering", r.avg_clustering},
          {"transitivity", r.transitivity},
          {"density", r.density},
          {"diameter", r.diameter},
          {"global_efficiency", r.global_efficiency},
          {"avg_shortest_path", r.avg_shortest_path},
          {"component_count", r.component_count},
          {"community_count", r.community_count},
          {"disconnected", r.disconnected},
          {"disconnected_pairs", r.disconnected_pairs},
          {"node_count", r.node_count},
          {"edge_count", r.edge_count}};
}

nlohmann::json to_json(const BoxplotStats& b) {
  return {{"q1", b.q1},
          {"median", b.median},
          {"q3", b.q3},
          {"whisker_low", b.whisker_low},
          {"whisker_high", b.whisker_high},
          {"outliers", b.outliers}};
}

namespace {
nlohmann::json f_value(double f) {
  if (std::isinf(f)) return "inf";
  return f;
}
}  // namespace

nlohmann::json anova_json(const FeatureMatrix& m) {
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const AnovaResult a = anova_f(m, c);
    table.push_back({{"feature", m.names()[c]},
                     {"f", f_value(a.f)},
                     {"df_between", a.df_between},
                     {"df_within", a.df_within},
                     {"group_means", a.group_means},
                     {"group_sizes", a.group_sizes}});
  }
  return table;
}

nlohmann::json boxplot_json(const FeatureMatrix& m) {
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (int l = 0; l < kClassCount; ++l) {
      const auto label = static_cast<ClassLabel>(l);
      if (std::find(m.labels().begin(), m.labels().end(), label) == m.labels().end()) {
        continue;
      }
      nlohmann::json rec = to_json(boxplot_stats(m, c, label));
      rec["feature"] = m.names()[c];
      rec["label"] = std::string(to_string(label));
      records.push_back(std::move(rec));
    }
  }
  return records;
}

nlohmann::json cv_json(const std::vector<CvReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const CvReport& r : reports) {
    nlohmann::json reps = nlohmann::json::array();
    for (std::size_t i = 0; i < r.repetition_metrics.size(); ++i) {
      nlohmann::json folds = nlohmann::json::array();
      for (const auto& cm : r.fold_confusion[i]) folds.push_back(to_json(cm));
      reps.push_back({{"metrics", to_json(r.repetition_metrics[i])},
                      {"confusion", to_json(r.repetition_confusion[i])},
                      {"fold_confusion", std::move(folds)}});
    }
    out.push_back({{"model", r.model},
                   {"task", std::string(to_string(r.task))},
                   {"mean", to_json(r.mean)},
                   {"std", to_json(r.stddev)},
                   {"repetitions", std::move(reps)}});
  }
  return out;
}

void write_json(const nlohmann::json& doc, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
}

RunReport run_pipeline(const PipelineConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  nlohmann::json timing = nlohmann::json::object();
  RunReport report;
  fs::create_directories(cfg.output_dir);

  auto t0 = clock::now();
  const std::vector<Window> windows = collect_windows(cfg, report.counts);
  timing["preprocess_s"] = seconds_since(t0);
  if (windows.empty()) throw Error(ErrorCode::kEmptyInput, "no windows detected");
  if (cfg.export_windows_csv) write_windows(windows, cfg.output_dir / "windows.csv");

  t0 = clock::now();
  const bool export_graphs = cfg.export_graphml || cfg.export_dot;
  GraphFeatures gf =
      graph_features(windows, cfg, export_graphs ? cfg.output_dir / "graphs" : fs::path{});
  report.counts.graphs = gf.metrics.size();
  report.counts.feature_rows = gf.matrix.rows();
  report.features = gf.matrix;
  timing["graphs_features_s"] = seconds_since(t0);
  if (cfg.export_feature_csv) {
    write_feature_matrix(report.features, cfg.output_dir / "features.csv");
  }

  t0 = clock::now();
  const nlohmann::json anova = anova_json(report.features);
  report.selected = select_features(report.features, cfg.select_k);
  const nlohmann::json boxplots = boxplot_json(report.features);
  if (cfg.export_boxplot_json) write_json(boxplots, cfg.output_dir / "boxplots.json");
  timing["selection_s"] = seconds_since(t0);

  t0 = clock::now();
  report.models = run_cross_validation(report.features, cfg);
  const nlohmann::json models = cv_json(report.models);
  write_json(models, cfg.output_dir / "cv_report.json");
  timing["cross_validation_s"] = seconds_since(t0);

  // Per-class means of every graph metric.
  nlohmann::json graph_summary = nlohmann::json::object();
  for (int l = 0; l < kClassCount; ++l) {
    std::vector<const MetricReport*> group;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      if (windows[i].label == static_cast<ClassLabel>(l)) group.push_back(&gf.metrics[i]);
    }
    if (group.empty()) continue;
    std::vector<nlohmann::json> docs;
    for (const MetricReport* r : group) docs.push_back(to_json(*r));
    nlohmann::json mean = nlohmann::json::object();
    for (const auto& [key, value] : docs.front().items()) {
      if (value.is_boolean()) continue;
      double sum = 0.0;
      for (const auto& d : docs) sum += d[key].get<double>();
      mean[key] = sum / static_cast<double>(docs.size());
    }
    graph_summary[kLabels[l]] = {{"graphs", group.size()}, {"mean", std::move(mean)}};
  }

  std::vector<std::string> selected_names;
  for (std::size_t i : report.selected) selected_names.push_back(report.features.names()[i]);

  report.document = {
      {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
      {"config", cfg.echo},
      {"counts",
       {{"series", report.counts.series},
        {"windows", report.counts.windows},
        {"graphs", report.counts.graphs},
        {"feature_rows", report.counts.feature_rows}}},
      {"graph_summary", std::move(graph_summary)},
      {"anova", anova},
      {"selected_indices", report.selected},
      {"selected_features", selected_names},
      {"models", models},
      {"timing", std::move(timing)},
  };
  if (cfg.export_report_json) write_json(report.document, cfg.output_dir / "report.json");
  return report;
}

}  // namespace graphts
