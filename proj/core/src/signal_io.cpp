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

#include "graphts/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "graphts/error.hpp"

namespace graphts {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(fs::exists(path) ? ErrorCode::kIoError : ErrorCode::kMissingFile,
                "cannot open '" + path.string() + "'");
  }
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
}

std::string parse_error(const fs::path& path, std::size_t row, std::size_t col,
                        const std::string& token) {
  return "'" + path.string() + "' row " + std::to_string(row) + " column " +
         std::to_string(col) + ": cannot parse '" + token + "'";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

TimeSeries load_series(const fs::path& path, double sampling_rate) {
  std::ifstream in = open_input(path);
  TimeSeries ts;
  ts.sampling_rate = sampling_rate;
  ts.source_id = path.stem().string();

  std::string line;
  std::size_t row = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    const std::size_t value_col = cells.size() >= 2 ? 1 : 0;
    if (cells.size() > 2) {
      throw Error(ErrorCode::kParseError,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      ": expected 1 or 2 columns, got " +
                      std::to_string(cells.size()));
    }
    double value = 0.0;
    if (!parse_double(cells[value_col], value)) {
      // A non-numeric first row is a header.
      double probe = 0.0;
      if (first_content && !parse_double(cells[0], probe)) {
        first_content = false;
        continue;
      }
      throw Error(ErrorCode::kParseError,
                  parse_error(path, row, value_col + 1, cells[value_col]));
    }
    first_content = false;
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      " column " + std::to_string(value_col + 1) +
                      " is not finite");
    }
    ts.samples.push_back(value);
  }
  if (ts.samples.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "'" + path.string() + "' has no parsable values");
  }
  return ts;
}

void write_series(const TimeSeries& ts, const fs::path& path) {
  std::ofstream out = open_output(path);
  for (double v : ts.samples) out << format_double(v) << '\n';
  finish(out, path);
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in = open_input(path);
  DatasetManifest manifest;
  std::set<std::string> seen;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 3) {
      throw Error(ErrorCode::kParseError,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      ": expected path,label,rate");
    }
    double rate = 0.0;
    if (!parse_double(cells[2], rate)) {
      if (row == 1 || manifest.entries.empty()) {
        if (cells[0] == "path") continue;
      }
      throw Error(ErrorCode::kParseError, parse_error(path, row, 3, cells[2]));
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw Error(ErrorCode::kInvalidParams,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      ": rate must be positive");
    }
    ManifestEntry entry{cells[0], parse_label(cells[1]), rate};
    if (!seen.insert(entry.path).second) {
      throw Error(ErrorCode::kDuplicatePath,
                  "'" + entry.path + "' listed more than once");
    }
    manifest.entries.push_back(std::move(entry));
  }
  if (manifest.entries.empty()) {
    throw Error(ErrorCode::kEmptyInput, "'" + path.string() + "' lists no series");
  }
  return manifest;
}

std::vector<TimeSeries> load_dataset(const DatasetManifest& manifest,
                                     const fs::path& base_dir) {
  std::vector<TimeSeries> out;
  out.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) {
    fs::path p(entry.path);
    if (p.is_relative()) p = base_dir / p;
    if (!fs::exists(p)) {
      throw Error(ErrorCode::kMissingFile, "series '" + p.string() + "' not found");
    }
    TimeSeries ts = load_series(p, entry.sampling_rate);
    ts.source_id = entry.path;
    ts.label = entry.label;
    out.push_back(std::move(ts));
  }
  return out;
}

GraphFormat parse_graph_format(std::string_view text) {
  if (text == "graphml") return GraphFormat::kGraphml;
  if (text == "dot") return GraphFormat::kDot;
  if (text == "edges" || text == "edge-csv" || text == "csv") return GraphFormat::kEdgeCsv;
  throw Error(ErrorCode::kInvalidParams,
              "unknown graph format '" + std::string(text) + "'");
}

std::string_view extension_for(GraphFormat format) {
  switch (format) {
    case GraphFormat::kGraphml: return ".graphml";
    case GraphFormat::kDot: return ".dot";
    case GraphFormat::kEdgeCsv: return ".csv";
  }
  return "";
}

std::string format_graph(const VisibilityGraph& g, GraphFormat format) {
  std::ostringstream out;
  const auto edges = g.edges();
  switch (format) {
    case GraphFormat::kGraphml:
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
          << "  <key id=\"t\" for=\"node\" attr.name=\"t\" attr.type=\"long\"/>\n"
          << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        out << "    <node id=\"n" << v << "\"><data key=\"t\">" << v
            << "</data></node>\n";
      }
      for (std::size_t i = 0; i < edges.size(); ++i) {
        out << "    <edge id=\"e" << i << "\" source=\"n" << edges[i].first
            << "\" target=\"n" << edges[i].second << "\"/>\n";
      }
      out << "  </graph>\n</graphml>\n";
      break;
    case GraphFormat::kDot:
      out << "graph G {\n";
      for (std::size_t v = 0; v < g.node_count(); ++v) out << "  " << v << ";\n";
      for (auto [u, v] : edges) out << "  " << u << " -- " << v << ";\n";
      out << "}\n";
      break;
    case GraphFormat::kEdgeCsv:
      for (auto [u, v] : edges) out << u << ',' << v << '\n';
      break;
  }
  return out.str();
}

void export_graph(const VisibilityGraph& g, const fs::path& path,
                  GraphFormat format) {
  std::ofstream out = open_output(path);
  out << format_graph(g, format);
  finish(out, path);
}

std::string format_feature_matrix(const FeatureMatrix& m) {
  std::string out;
  for (const auto& name : m.names()) {
    out += name;
    out += ',';
  }
  out += "label\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (double v : m.row(r)) {
      out += format_double(v);
      out += ',';
    }
    out += to_string(m.labels()[r]);
    out += '\n';
  }
  return out;
}

void write_feature_matrix(const FeatureMatrix& m, const fs::path& path) {
  std::ofstream out = open_output(path);
  out << format_feature_matrix(m);
  finish(out, path);
}

FeatureMatrix read_feature_matrix(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kEmptyInput, "'" + path.string() + "' is empty");
  }
  auto header = split(line, ',');
  if (header.size() < 2 || header.back() != "label") {
    throw Error(ErrorCode::kSchemaMismatch,
                "'" + path.string() + "' header must end with a label column");
  }
  header.pop_back();
  FeatureMatrix m(header);
  std::vector<double> values(header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size() + 1) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      " has " + std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(header.size() + 1));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (!parse_double(cells[c], values[c])) {
        throw Error(ErrorCode::kParseError, parse_error(path, row, c + 1, cells[c]));
      }
    }
    m.add_row(values, parse_label(cells.back()));
  }
  return m;
}

void write_windows(const std::vector<Window>& windows, const fs::path& path) {
  std::ofstream out = open_output(path);
  out << "source_id,label,start_index,peak_index,samples\n";
  for (const Window& w : windows) {
    out << w.source_id << ',' << (w.label ? to_string(*w.label) : "") << ','
        << w.start_index << ',' << w.peak_index << ',';
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
      if (i) out << ' ';
      out << format_double(w.samples[i]);
    }
    out << '\n';
  }
  finish(out, path);
}

std::vector<Window> read_windows(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) ||
      trim(line) != "source_id,label,start_index,peak_index,samples") {
    throw Error(ErrorCode::kSchemaMismatch,
                "'" + path.string() + "' is not a window table");
  }
  std::vector<Window> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 5) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      ": expected 5 columns");
    }
    Window w;
    w.source_id = cells[0];
    if (!cells[1].empty()) w.label = parse_label(cells[1]);
    double start = 0.0, peak = 0.0;
    if (!parse_double(cells[2], start) || !parse_double(cells[3], peak)) {
      throw Error(ErrorCode::kParseError,
                  "'" + path.string() + "' row " + std::to_string(row) +
                      ": bad index");
    }
    w.start_index = static_cast<std::size_t>(start);
    w.peak_index = static_cast<std::size_t>(peak);
    std::istringstream samples(cells[4]);
    std::string token;
    while (samples >> token) {
      double v = 0.0;
      if (!parse_double(token, v)) {
        throw Error(ErrorCode::kParseError, parse_error(path, row, 5, token));
      }
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteValue,
                    "'" + path.string() + "' row " + std::to_string(row));
      }
      w.samples.push_back(v);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace graphts
