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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphts/classify.hpp"
#include "graphts/config.hpp"
#include "graphts/features.hpp"
#include "graphts/graph_metrics.hpp"
#include "graphts/preprocess.hpp"
#include "graphts/signal_io.hpp"
#include "graphts/synth.hpp"
#include "graphts/visibility.hpp"

namespace graphts {

inline constexpr const char* kToolName = "graphts";
inline constexpr const char* kToolVersion = "0.1.0";

// Environment variable that overrides output.dir.
inline constexpr const char* kOutputDirEnv = "GRAPHTS_OUTPUT_DIR";

struct PipelineConfig {
  enum class Source { kSynthetic, kManifest };

  Source source = Source::kSynthetic;
  std::filesystem::path manifest;

  std::size_t synthetic_windows_per_class = 100;
  double synthetic_sampling_rate = 4000.0;
  double synthetic_duration_s = 2.0;
  std::uint64_t synthetic_seed = 1;
  SynthParams synth;

  EnvelopeParams envelope;
  std::size_t window_length = 200;
  Threshold threshold = Threshold::quantile(0.95);
  std::size_t max_windows_per_series = 0;  // 0 = unlimited

  GraphKind graph_kind = GraphKind::kNvg;
  NvgAlgorithm nvg_algorithm = NvgAlgorithm::kFast;
  std::uint64_t community_seed = 0;

  std::size_t select_k = 3;
  std::vector<ModelSpec> models;
  std::vector<Task> tasks{Task::kThreeClass};
  std::size_t cv_folds = 5;
  std::size_t cv_repetitions = 20;
  std::uint64_t cv_seed = 0;

  bool export_graphml = false;
  bool export_dot = false;
  bool export_windows_csv = true;
  bool export_feature_csv = true;
  bool export_boxplot_json = true;
  bool export_report_json = true;
  std::filesystem::path output_dir = "graphts_out";

  std::size_t workers = 1;

  // Effective configuration as sorted key/value pairs.
  std::map<std::string, std::string> echo;

  // Validates every key (kConfigError naming the offending key). cv.seed is
  // required unless `require_seed` is false (stages that never train);
  // everything else has a default. GRAPHTS_OUTPUT_DIR, when set, replaces
  // output.dir.
  static PipelineConfig from_config(const Config& cfg, bool require_seed = true);
};

// Every key from_config understands, with its default ("" = required or
// unset).
const std::map<std::string, std::string>& default_config_values();

ModelSpec model_from_config(const std::string& name, const Config& cfg);

struct StageCounts {
  std::size_t series = 0;
  std::size_t windows = 0;
  std::size_t graphs = 0;
  std::size_t feature_rows = 0;
};

// Loads or synthesizes the input, computes each series' linear envelope and
// cuts peak-centered windows (detected on the raw signal) out of it.
std::vector<Window> collect_windows(const PipelineConfig& cfg,
                                    StageCounts& counts);

// Windows from one series: envelope, then detected windows sliced from it.
std::vector<Window> windows_from_series(const TimeSeries& ts,
                                        const PipelineConfig& cfg);

struct GraphFeatures {
  std::vector<MetricReport> metrics;  // one per window
  FeatureMatrix matrix;
};

// Builds each window's graph (in parallel over cfg.workers threads; output
// order follows window order), its metrics and feature row. When
// `graph_dir` is non-empty, graphs are exported there as window_NNNNN.*.
GraphFeatures graph_features(const std::vector<Window>& windows,
                             const PipelineConfig& cfg,
                             const std::filesystem::path& graph_dir = {});

std::vector<CvReport> run_cross_validation(const FeatureMatrix& matrix,
                                           const PipelineConfig& cfg);

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const MetricReport& r);
nlohmann::json to_json(const BoxplotStats& b);
nlohmann::json anova_json(const FeatureMatrix& m);
nlohmann::json boxplot_json(const FeatureMatrix& m);
nlohmann::json cv_json(const std::vector<CvReport>& reports);

struct RunReport {
  StageCounts counts;
  FeatureMatrix features;
  std::vector<std::size_t> selected;
  std::vector<CvReport> models;
  nlohmann::json document;  // full report, timing under "timing"
};

// ingest -> envelope -> windows -> graphs -> features -> ANOVA selection ->
// cross-validation -> exports. Files written to cfg.output_dir:
// windows.csv, features.csv, boxplots.json, cv_report.json, report.json and
// graphs/ when graph export is on.
RunReport run_pipeline(const PipelineConfig& cfg);

// Writes JSON with two-space indentation and a trailing newline.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace graphts
