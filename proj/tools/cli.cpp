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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "graphts/error.hpp"
#include "graphts/pipeline.hpp"

namespace graphts::cli {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
};

Config load_config(const CommonOptions& opts) {
  Config cfg = opts.config_path.empty() ? Config{} : Config::load(opts.config_path);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kConfigError, "--set expects key=value, got '" + kv + "'");
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "Config file (key = value)");
  cmd->add_option("--set", opts.overrides, "Override a config key (key=value)");
}

fs::path or_default(const std::string& given, const fs::path& fallback) {
  return given.empty() ? fallback : fs::path(given);
}

// --- synth ---------------------------------------------------------------

struct SynthOptions {
  CommonOptions common;
  std::string label;
  std::uint64_t seed = 1;
  std::string output;
  std::string dataset_dir;
  std::size_t per_class = 10;
};

void run_synth(const SynthOptions& o, std::ostream& out) {
  const PipelineConfig cfg = PipelineConfig::from_config(load_config(o.common), false);
  const double rate = cfg.synthetic_sampling_rate;
  const double duration = cfg.synthetic_duration_s;
  if (!o.dataset_dir.empty()) {
    const fs::path dir = o.dataset_dir;
    fs::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv");
    manifest << "path,label,rate\n";
    for (int c = 0; c < kClassCount; ++c) {
      const auto label = static_cast<ClassLabel>(c);
      for (std::size_t i = 0; i < o.per_class; ++i) {
        const std::string name =
            std::string(to_string(label)) + "_" + std::to_string(o.seed + i) + ".csv";
        write_series(synthesize_emg(label, o.seed + i, rate, duration, cfg.synth), dir / name);
        manifest << name << ',' << to_string(label) << ',' << format_double(rate) << '\n';
      }
    }
    if (!manifest) throw Error(ErrorCode::kIoError, "cannot write manifest in " + dir.string());
    out << "wrote " << o.per_class * kClassCount << " series and manifest.csv to "
        << dir.string() << '\n';
    return;
  }
  if (o.label.empty() || o.output.empty()) {
    throw Error(ErrorCode::kConfigError, "synth needs --label and --output, or --dataset");
  }
  const TimeSeries ts = synthesize_emg(parse_label(o.label), o.seed, rate, duration, cfg.synth);
  write_series(ts, o.output);
  out << "wrote " << ts.size() << " samples to " << o.output << '\n';
}

// --- preprocess ------------------------------------------------------------

struct PreprocessOptions {
  CommonOptions common;
  std::string series;
  std::string label;
  double rate = 0.0;
  std::string output;
};

void run_preprocess(const PreprocessOptions& o, std::ostream& out) {
  const PipelineConfig cfg = PipelineConfig::from_config(load_config(o.common), false);
  std::vector<Window> windows;
  StageCounts counts;
  if (!o.series.empty()) {
    const double rate = o.rate > 0.0 ? o.rate : cfg.synthetic_sampling_rate;
    TimeSeries ts = load_series(o.series, rate);
    if (!o.label.empty()) ts.label = parse_label(o.label);
    windows = windows_from_series(ts, cfg);
    counts.series = 1;
  } else {
    windows = collect_windows(cfg, counts);
  }
  const fs::path path = or_default(o.output, cfg.output_dir / "windows.csv");
  write_windows(windows, path);
  out << "series " << counts.series << ", windows " << windows.size() << " -> "
      << path.string() << '\n';
}

// --- graph -----------------------------------------------------------------

struct GraphOptions {
  CommonOptions common;
  std::string input;
  bool windows = false;
  std::string format = "graphml";
  std::string output_dir;
};

void run_graph(const GraphOptions& o, std::ostream& out) {
  const PipelineConfig cfg = PipelineConfig::from_config(load_config(o.common), false);
  const GraphFormat format = parse_graph_format(o.format);
  const fs::path dir = or_default(o.output_dir, cfg.output_dir / "graphs");
  fs::create_directories(dir);

  auto emit = [&](std::span<const double> samples, const std::string& stem) {
    const VisibilityGraph g = build_graph(samples, cfg.graph_kind, cfg.nvg_algorithm);
    export_graph(g, dir / (stem + std::string(extension_for(format))), format);
    return to_json(compute_metrics(g, cfg.community_seed));
  };

  if (o.windows) {
    const std::vector<Window> windows = read_windows(o.input);
    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t i = 0; i < windows.size(); ++i) {
      char stem[32];
      std::snprintf(stem, sizeof(stem), "window_%05zu", i);
      reports.push_back(emit(windows[i].samples, stem));
    }
    write_json(reports, dir / "metrics.json");
    out << windows.size() << " graphs -> " << dir.string() << '\n';
  } else {
    const TimeSeries ts = load_series(o.input, cfg.synthetic_sampling_rate);
    const std::string stem = fs::path(o.input).stem().string();
    write_json(emit(ts.samples, stem), dir / (stem + "_metrics.json"));
    out << "1 graph -> " << dir.string() << '\n';
  }
}

// --- features ----------------------------------------------------------------

struct FeaturesOptions {
  CommonOptions common;
  std::string windows;
  std::string output;
};

void run_features(const FeaturesOptions& o, std::ostream& out) {
  const PipelineConfig cfg = PipelineConfig::from_config(load_config(o.common), false);
  const std::vector<Window> windows = read_windows(o.windows);
  const GraphFeatures gf = graph_features(windows, cfg);
  const fs::path path = or_default(o.output, cfg.output_dir / "features.csv");
  write_feature_matrix(gf.matrix, path);
  out << gf.matrix.rows() << " rows x " << gf.matrix.cols() << " features -> "
      << path.string() << '\n';
}

// --- select ------------------------------------------------------------------

struct SelectOptions {
  std::string features;
  std::size_t k = 3;
};

void run_select(const SelectOptions& o, std::ostream& out) {
  const FeatureMatrix m = read_feature_matrix(o.features);
  out << std::left << std::setw(20) << "feature" << "F\n";
  std::vector<double> f(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    f[c] = anova_f(m, c).f;
    out << std::setw(20) << m.names()[c] << format_double(f[c]) << '\n';
  }
  out << "selected:";
  for (std::size_t i : select_features(f, o.k)) out << ' ' << i;
  out << '\n';
}

// --- train -------------------------------------------------------------------

struct TrainOptions {
  CommonOptions common;
  std::string features;
  std::string output;
};

void print_cv_summary(const std::vector<CvReport>& reports, std::ostream& out) {
  for (const CvReport& r : reports) {
    out << std::left << std::setw(8) << r.model << std::setw(12) << to_string(r.task)
        << "accuracy " << std::fixed << std::setprecision(4) << r.mean.accuracy
        << " +- " << r.stddev.accuracy << "  recall " << r.mean.recall << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

void run_train(const TrainOptions& o, std::ostream& out) {
  const PipelineConfig cfg = PipelineConfig::from_config(load_config(o.common));
  const FeatureMatrix m = read_feature_matrix(o.features);
  const std::vector<CvReport> reports = run_cross_validation(m, cfg);
  const fs::path path = or_default(o.output, cfg.output_dir / "cv_report.json");
  write_json(cv_json(reports), path);
  print_cv_summary(reports, out);
}

// --- eval --------------------------------------------------------------------

struct EvalOptions {
  std::string predictions;
  std::string task;
  std::string output;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

void run_eval(const EvalOptions& o, std::ostream& out) {
  std::ifstream in(o.predictions);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open '" + o.predictions + "'");
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kParseError,
                  o.predictions + ": row " + std::to_string(row) + ": expected true,pred");
    }
    if (rows.empty() && fields[0] == "true" && fields[1] == "pred") continue;
    rows.emplace_back(fields[0], fields[1]);
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, o.predictions + " has no rows");

  Task task = Task::kThreeClass;
  if (!o.task.empty()) {
    task = parse_task(o.task);
  } else {
    for (const auto& [t, p] : rows) {
      if (t == "P" || p == "P") task = Task::kTwoClass;
    }
  }
  auto target = [&](const std::string& name) {
    if (task == Task::kTwoClass && name == "P") return 1;
    return target_for(parse_label(name), task);
  };
  ConfusionMatrix cm(class_count(task));
  for (const auto& [t, p] : rows) cm.add(target(t), target(p));

  const nlohmann::json doc = {{"task", std::string(to_string(task))},
                              {"confusion", to_json(cm)},
                              {"metrics", to_json(evaluate(cm))}};
  if (o.output.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_json(doc, o.output);
  }
}

// --- pipeline ----------------------------------------------------------------

void run_full(const CommonOptions& o, std::ostream& out) {
  const PipelineConfig cfg = PipelineConfig::from_config(load_config(o));
  const RunReport report = run_pipeline(cfg);
  out << "series " << report.counts.series << ", windows " << report.counts.windows
      << ", graphs " << report.counts.graphs << ", feature rows "
      << report.counts.feature_rows << '\n';
  out << "selected:";
  for (std::size_t i : report.selected) out << ' ' << report.features.names()[i];
  out << '\n';
  print_cv_summary(report.models, out);
  out << "outputs in " << cfg.output_dir.string() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Visibility-graph features and classification for 1-D time series",
               "graphts"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic EMG-like series");
  add_common(synth_cmd, synth.common);
  synth_cmd->add_option("--label", synth.label, "Class label (H, M or N)");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("-o,--output", synth.output, "Output series file");
  synth_cmd->add_option("--dataset", synth.dataset_dir,
                        "Write a labeled dataset and manifest.csv into this directory");
  synth_cmd->add_option("--per-class", synth.per_class, "Series per class with --dataset");

  PreprocessOptions pre;
  auto* pre_cmd =
      app.add_subcommand("preprocess", "Envelope and peak windows (writes windows.csv)");
  add_common(pre_cmd, pre.common);
  pre_cmd->add_option("--series", pre.series, "Single series file instead of config input");
  pre_cmd->add_option("--label", pre.label, "Label for --series");
  pre_cmd->add_option("--rate", pre.rate, "Sampling rate (Hz) for --series");
  pre_cmd->add_option("-o,--output", pre.output, "Windows CSV");

  GraphOptions graph;
  auto* graph_cmd = app.add_subcommand("graph", "Build and export visibility graphs");
  add_common(graph_cmd, graph.common);
  graph_cmd->add_option("input", graph.input, "Series file, or windows CSV with --windows")
      ->required();
  graph_cmd->add_flag("--windows", graph.windows, "Input is a windows CSV");
  graph_cmd->add_option("--format", graph.format, "graphml, dot or edges");
  graph_cmd->add_option("-o,--output-dir", graph.output_dir, "Export directory");

  FeaturesOptions feat;
  auto* feat_cmd = app.add_subcommand("features", "Feature matrix from a windows CSV");
  add_common(feat_cmd, feat.common);
  feat_cmd->add_option("windows", feat.windows, "Windows CSV")->required();
  feat_cmd->add_option("-o,--output", feat.output, "Feature CSV");

  SelectOptions sel;
  auto* sel_cmd = app.add_subcommand("select", "ANOVA F table and top-k features");
  sel_cmd->add_option("features", sel.features, "Feature CSV")->required();
  sel_cmd->add_option("-k,--k", sel.k, "Number of features to keep");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Repeated stratified cross-validation");
  add_common(train_cmd, train.common);
  train_cmd->add_option("features", train.features, "Feature CSV")->required();
  train_cmd->add_option("-o,--output", train.output, "CV report JSON");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Metrics from a true,pred CSV");
  eval_cmd->add_option("predictions", eval.predictions, "Predictions CSV")->required();
  eval_cmd->add_option("--task", eval.task, "two_class or three_class");
  eval_cmd->add_option("-o,--output", eval.output, "Write JSON here instead of stdout");

  CommonOptions full;
  auto* full_cmd = app.add_subcommand("pipeline", "Run every stage from one config");
  add_common(full_cmd, full);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();  // program name
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string stage = chosen->get_name();
  try {
    if (chosen == synth_cmd) run_synth(synth, out);
    if (chosen == pre_cmd) run_preprocess(pre, out);
    if (chosen == graph_cmd) run_graph(graph, out);
    if (chosen == feat_cmd) run_features(feat, out);
    if (chosen == sel_cmd) run_select(sel, out);
    if (chosen == train_cmd) run_train(train, out);
    if (chosen == eval_cmd) run_eval(eval, out);
    if (chosen == full_cmd) run_full(full, out);
    return 0;
  } catch (const Error& e) {
    err << "graphts " << stage << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "graphts " << stage << ": IoError: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "graphts " << stage << ": internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace graphts::cli
