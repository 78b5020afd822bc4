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

#include "graphts/visibility.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <string>

#include "graphts/error.hpp"

namespace graphts {

VisibilityGraph::VisibilityGraph(std::size_t node_count, GraphKind kind)
    : neighbors_(node_count), kind_(kind) {}

VisibilityGraph VisibilityGraph::from_edges(
    std::size_t node_count,
    std::span<const std::pair<std::size_t, std::size_t>> edges,
    GraphKind kind) {
  GraphBuilder builder(node_count, kind);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorCode::kBadNode, "edge (" + std::to_string(u) + ", " +
                                           std::to_string(v) +
                                           ") outside node range");
    }
    if (u == v) {
      throw Error(ErrorCode::kInvalidParams,
                  "self-loop at node " + std::to_string(u));
    }
    builder.add_edge(u, v);
  }
  VisibilityGraph g = std::move(builder).build();
  for (const auto& list : g.neighbors_) {
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw Error(ErrorCode::kInvalidParams, "duplicate edge in edge list");
    }
  }
  return g;
}

bool VisibilityGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto& list = neighbors_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> VisibilityGraph::edges()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < neighbors_.size(); ++u) {
    for (std::size_t v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<unsigned char> VisibilityGraph::adjacency_matrix() const {
  const std::size_t n = node_count();
  std::vector<unsigned char> dense(n * n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : neighbors_[u]) dense[u * n + v] = 1;
  }
  return dense;
}

GraphBuilder::GraphBuilder(std::size_t node_count, GraphKind kind)
    : graph_(node_count, kind) {}

void GraphBuilder::add_edge(std::size_t u, std::size_t v) {
  graph_.neighbors_[u].push_back(v);
  graph_.neighbors_[v].push_back(u);
  ++graph_.edge_count_;
}

VisibilityGraph GraphBuilder::build() && {
  for (auto& list : graph_.neighbors_) std::sort(list.begin(), list.end());
  return std::move(graph_);
}

namespace {

// Error-free transformations.
inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  const double av = sum - bv;
  err = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& prod, double& err) {
  prod = a * b;
  err = std::fma(a, b, -prod);
}

// Adds `b` into a nonoverlapping expansion (increasing magnitude), dropping
// zero components.
void grow_expansion(std::vector<double>& e, double b) {
  double q = b;
  std::size_t out = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double h;
    two_sum(q, e[i], q, h);
    if (h != 0.0) e[out++] = h;
  }
  e.resize(out);
  if (q != 0.0) e.push_back(q);
}

int exact_orientation(double m1, double yc, double ya, double m2, double yb) {
  double d1, e1, d2, e2;
  two_sum(yc, -ya, d1, e1);
  two_sum(yb, -ya, d2, e2);
  double terms[8];
  two_product(m1, d1, terms[0], terms[1]);
  two_product(m1, e1, terms[2], terms[3]);
  two_product(-m2, d2, terms[4], terms[5]);
  two_product(-m2, e2, terms[6], terms[7]);
  std::vector<double> expansion;
  expansion.reserve(16);
  for (double t : terms) {
    if (t != 0.0) grow_expansion(expansion, t);
  }
  if (expansion.empty()) return 0;
  return expansion.back() > 0.0 ? 1 : -1;
}

void require_finite(std::span<const double> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "sample " + std::to_string(i) + " is not finite");
    }
  }
}

// Argmax range queries, ties resolved to the lowest index.
class SparseArgmax {
 public:
  explicit SparseArgmax(std::span<const double> values) : values_(values) {
    const std::size_t n = values.size();
    const int levels = n == 0 ? 1 : std::bit_width(n);
    table_.resize(static_cast<std::size_t>(levels));
    table_[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      table_[0][i] = static_cast<std::uint32_t>(i);
    }
    for (int level = 1; level < levels; ++level) {
      const std::size_t span = std::size_t{1} << level;
      const std::size_t half = span / 2;
      auto& row = table_[static_cast<std::size_t>(level)];
      const auto& prev = table_[static_cast<std::size_t>(level) - 1];
      row.resize(n - span + 1);
      for (std::size_t i = 0; i + span <= n; ++i) {
        row[i] = better(prev[i], prev[i + half]);
      }
    }
  }

  // Inclusive range [lo, hi].
  std::size_t query(std::size_t lo, std::size_t hi) const {
    const std::size_t len = hi - lo + 1;
    const int level = std::bit_width(len) - 1;
    const auto& row = table_[static_cast<std::size_t>(level)];
    return better(row[lo], row[hi + 1 - (std::size_t{1} << level)]);
  }

 private:
  std::uint32_t better(std::uint32_t a, std::uint32_t b) const {
    if (values_[b] > values_[a]) return b;
    if (values_[a] > values_[b]) return a;
    return std::min(a, b);
  }

  std::span<const double> values_;
  std::vector<std::vector<std::uint32_t>> table_;
};

}  // namespace

int orientation(std::ptrdiff_t ia, double ya, std::ptrdiff_t ib, double yb,
                std::ptrdiff_t ic, double yc) {
  const double m1 = static_cast<double>(ib - ia);
  const double m2 = static_cast<double>(ic - ia);
  const double t1 = m1 * (yc - ya);
  const double t2 = m2 * (yb - ya);
  const double det = t1 - t2;
  const double bound = 8.0 * DBL_EPSILON * (std::fabs(t1) + std::fabs(t2));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return exact_orientation(m1, yc, ya, m2, yb);
}

VisibilityGraph nvg_naive(std::span<const double> samples) {
  require_finite(samples);
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  GraphBuilder builder(samples.size(), GraphKind::kNvg);
  for (std::ptrdiff_t a = 0; a + 1 < n; ++a) {
    builder.add_edge(static_cast<std::size_t>(a),
                     static_cast<std::size_t>(a + 1));
    // `ref` is the steepest point seen so far from `a`; b is visible iff it
    // lies strictly above the ray a->ref.
    std::ptrdiff_t ref = a + 1;
    for (std::ptrdiff_t b = a + 2; b < n; ++b) {
      if (orientation(a, samples[a], ref, samples[ref], b, samples[b]) > 0) {
        builder.add_edge(static_cast<std::size_t>(a),
                         static_cast<std::size_t>(b));
        ref = b;
      }
    }
  }
  return std::move(builder).build();
}

VisibilityGraph nvg_fast(std::span<const double> samples) {
  require_finite(samples);
  const std::size_t n = samples.size();
  GraphBuilder builder(n, GraphKind::kNvg);
  if (n < 2) return std::move(builder).build();

  const SparseArgmax argmax(samples);
  auto y = [&](std::ptrdiff_t i) { return samples[static_cast<std::size_t>(i)]; };
  auto link = [&](std::ptrdiff_t u, std::ptrdiff_t v) {
    builder.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  };

  // No edge crosses the maximum of a segment, so each segment splits into
  // independent halves once the maximum's own edges are emitted.
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> pending;
  pending.emplace_back(0, static_cast<std::ptrdiff_t>(n) - 1);
  while (!pending.empty()) {
    const auto [lo, hi] = pending.back();
    pending.pop_back();
    const auto k = static_cast<std::ptrdiff_t>(
        argmax.query(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)));
    const double yk = y(k);

    // Sight lines from the maximum only fall away from it, so a block whose
    // own maximum, moved to the block's far end, is on or below the current
    // line hides every sample in it. Blocks grow after each skip and shrink
    // on a miss; a single-sample block that is not hidden is visible.
    auto max_at = [&](std::ptrdiff_t a, std::ptrdiff_t b) {
      return y(static_cast<std::ptrdiff_t>(
          argmax.query(static_cast<std::size_t>(a), static_cast<std::size_t>(b))));
    };
    if (k > lo) {
      link(k - 1, k);
      std::ptrdiff_t ref = k - 1;
      std::ptrdiff_t i = k - 2;
      std::ptrdiff_t span = 1;
      while (i >= lo) {
        const std::ptrdiff_t a = std::max(lo, i - span + 1);
        if (orientation(k, yk, ref, y(ref), a, max_at(a, i)) >= 0) {
          i = a - 1;
          span *= 2;
        } else if (a == i) {
          link(i, k);
          ref = i--;
          span = 1;
        } else {
          span = std::max<std::ptrdiff_t>(1, (i - a + 1) / 2);
        }
      }
      if (k - lo >= 2) pending.emplace_back(lo, k - 1);
    }
    if (k < hi) {
      link(k, k + 1);
      std::ptrdiff_t ref = k + 1;
      std::ptrdiff_t j = k + 2;
      std::ptrdiff_t span = 1;
      while (j <= hi) {
        const std::ptrdiff_t b = std::min(hi, j + span - 1);
        if (orientation(k, yk, ref, y(ref), b, max_at(j, b)) <= 0) {
          j = b + 1;
          span *= 2;
        } else if (b == j) {
          link(k, j);
          ref = j++;
          span = 1;
        } else {
          span = std::max<std::ptrdiff_t>(1, (b - j + 1) / 2);
        }
      }
      if (hi - k >= 2) pending.emplace_back(k + 1, hi);
    }
  }
  return std::move(builder).build();
}

VisibilityGraph hvg(std::span<const double> samples) {
  require_finite(samples);
  GraphBuilder builder(samples.size(), GraphKind::kHvg);
  // Stack of indices whose horizon is still open, values strictly
  // decreasing from bottom to top.
  std::vector<std::size_t> open;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    while (!open.empty()) {
      const std::size_t top = open.back();
      builder.add_edge(top, j);
      if (samples[top] < samples[j]) {
        open.pop_back();
        continue;
      }
      if (samples[top] == samples[j]) open.pop_back();
      break;
    }
    open.push_back(j);
  }
  return std::move(builder).build();
}

VisibilityGraph build_graph(std::span<const double> samples, GraphKind kind,
                            NvgAlgorithm algorithm) {
  if (kind == GraphKind::kHvg) return hvg(samples);
  return algorithm == NvgAlgorithm::kFast ? nvg_fast(samples)
                                          : nvg_naive(samples);
}

}  // namespace graphts
