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
#include <span>
#include <utility>
#include <vector>

namespace graphts {

enum class GraphKind { kNvg, kHvg };

// Undirected simple graph on time-ordered nodes 0..n-1. Neighbor lists are
// sorted ascending and symmetric.
class VisibilityGraph {
 public:
  VisibilityGraph() = default;
  VisibilityGraph(std::size_t node_count, GraphKind kind);

  // Builds from an arbitrary undirected edge list (used for canonical test
  // graphs and relabeling). Self-loops and duplicates are rejected.
  static VisibilityGraph from_edges(
      std::size_t node_count,
      std::span<const std::pair<std::size_t, std::size_t>> edges,
      GraphKind kind = GraphKind::kNvg);

  std::size_t node_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  GraphKind kind() const { return kind_; }

  const std::vector<std::size_t>& neighbors(std::size_t node) const {
    return neighbors_[node];
  }
  std::size_t degree(std::size_t node) const {
    return neighbors_[node].size();
  }
  bool has_edge(std::size_t u, std::size_t v) const;

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  // Dense 0/1 adjacency matrix, row-major n*n.
  std::vector<unsigned char> adjacency_matrix() const;

  friend bool operator==(const VisibilityGraph& a, const VisibilityGraph& b) {
    return a.neighbors_ == b.neighbors_;
  }

 private:
  friend class GraphBuilder;

  std::vector<std::vector<std::size_t>> neighbors_;
  std::size_t edge_count_ = 0;
  GraphKind kind_ = GraphKind::kNvg;
};

// Accumulates edges in any order, then sorts neighbor lists once.
class GraphBuilder {
 public:
  GraphBuilder(std::size_t node_count, GraphKind kind);
  void add_edge(std::size_t u, std::size_t v);
  VisibilityGraph build() &&;

 private:
  VisibilityGraph graph_;
};

// Sign of the orientation determinant of (ia, ya), (ib, yb), (ic, yc),
// evaluated exactly: a floating-point filter with an error-free expansion
// fallback. +1 when c lies to the left of the directed line a->b.
int orientation(std::ptrdiff_t ia, double ya, std::ptrdiff_t ib, double yb,
                std::ptrdiff_t ic, double yc);

// Natural visibility graph. Nodes a < b see each other iff every c in (a, b)
// lies strictly below the segment joining (a, y_a) and (b, y_b). Collinear or
// equal intermediates block. Throws kNonFiniteValue on NaN/inf input.
//
// nvg_naive scans every node's right-hand horizon (O(n^2)). nvg_fast splits
// on the segment maximum (lowest index on ties), finds the maximum's edges by
// skipping hidden blocks with range-maximum queries, and recurses on both
// sides, in O((n + E) log n) for E edges. Both yield identical edge sets.
VisibilityGraph nvg_naive(std::span<const double> samples);
VisibilityGraph nvg_fast(std::span<const double> samples);

// Horizontal visibility graph: a, b connected iff every intermediate value
// is strictly below min(y_a, y_b). Single stack pass, O(n).
VisibilityGraph hvg(std::span<const double> samples);

enum class NvgAlgorithm { kFast, kNaive };

VisibilityGraph build_graph(std::span<const double> samples, GraphKind kind,
                            NvgAlgorithm algorithm = NvgAlgorithm::kFast);

}  // namespace graphts
