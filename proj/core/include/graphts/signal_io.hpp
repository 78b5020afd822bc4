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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "graphts/features.hpp"
#include "graphts/preprocess.hpp"
#include "graphts/series.hpp"
#include "graphts/visibility.hpp"

namespace graphts {

// One value per line, or a `time,value` CSV with an optional header row.
// Blank lines are skipped. Errors: kMissingFile, kEmptyInput, kParseError
// (with row and column), kNonFiniteValue.
TimeSeries load_series(const std::filesystem::path& path,
                       double sampling_rate);

// One value per line at full round-trip precision.
void write_series(const TimeSeries& ts, const std::filesystem::path& path);

struct ManifestEntry {
  std::string path;
  ClassLabel label = ClassLabel::kHealthy;
  double sampling_rate = 0.0;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

// CSV `path,label,rate` (header optional). Relative series paths are kept
// as written; resolve them against the manifest directory when loading.
DatasetManifest load_manifest(const std::filesystem::path& path);

// Loads every manifest entry; relative paths resolve against `base_dir`.
std::vector<TimeSeries> load_dataset(const DatasetManifest& manifest,
                                     const std::filesystem::path& base_dir);

enum class GraphFormat { kGraphml, kDot, kEdgeCsv };

GraphFormat parse_graph_format(std::string_view text);
std::string_view extension_for(GraphFormat format);

void export_graph(const VisibilityGraph& g, const std::filesystem::path& path,
                  GraphFormat format);
std::string format_graph(const VisibilityGraph& g, GraphFormat format);

// Header: feature names then `label`; values printed with 17 significant
// digits so the round trip is exact.
void write_feature_matrix(const FeatureMatrix& m,
                          const std::filesystem::path& path);
std::string format_feature_matrix(const FeatureMatrix& m);
// kSchemaMismatch when the header lacks a trailing `label` column or a row
// has the wrong width.
FeatureMatrix read_feature_matrix(const std::filesystem::path& path);

// Window table: `source_id,label,start_index,peak_index,samples` where the
// samples field holds space-separated values.
void write_windows(const std::vector<Window>& windows,
                   const std::filesystem::path& path);
std::vector<Window> read_windows(const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace graphts
