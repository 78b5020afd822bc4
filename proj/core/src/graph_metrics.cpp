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

#include "graphts/graph_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "graphts/error.hpp"
#include "graphts/random.hpp"

namespace graphts {

namespace {

// Triangles through each node; every triangle counted once per corner.
std::vector<std::size_t> triangles_per_node(const VisibilityGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> tri(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nu = g.neighbors(u);
    for (std::size_t v : nu) {
      if (v <= u) continue;
      const auto& nv = g.neighbors(v);
      // Common neighbors w > v by merging the two sorted lists.
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++tri[u];
          ++tri[v];
          ++tri[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return tri;
}

double pairs(std::size_t k) {
  return 0.5 * static_cast<double>(k) * static_cast<double>(k > 0 ? k - 1 : 0);
}

void bfs(const VisibilityGraph& g, std::size_t source,
         std::vector<std::size_t>& dist, std::vector<std::size_t>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

struct PathSweep {
  std::size_t largest_component_diameter = 0;
  double hop_sum = 0.0;
  std::size_t reachable_ordered = 0;
  std::size_t unreachable_ordered = 0;
  double inverse_sum = 0.0;
};

PathSweep sweep_all_pairs(const VisibilityGraph& g,
                          const std::vector<std::vector<std::size_t>>& comps) {
  PathSweep out;
  const std::size_t n = g.node_count();
  std::vector<std::size_t> component_of(n, 0);
  std::size_t largest = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) component_of[v] = c;
    if (comps[c].size() > comps[largest].size()) largest = c;
  }
  std::vector<std::size_t> dist(n), queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    bfs(g, s, dist, queue);
    std::size_t eccentricity = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s) continue;
      if (dist[t] == kUnreachable) {
        ++out.unreachable_ordered;
        continue;
      }
      eccentricity = std::max(eccentricity, dist[t]);
      out.hop_sum += static_cast<double>(dist[t]);
      out.inverse_sum += 1.0 / static_cast<double>(dist[t]);
      ++out.reachable_ordered;
    }
    if (component_of[s] == largest) {
      out.largest_component_diameter =
          std::max(out.largest_component_diameter, eccentricity);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> group_by_label(
    const std::vector<std::size_t>& label) {
  const std::size_t n = label.size();
  // Groups appear in order of their smallest member when nodes are scanned
  // ascending.
  std::vector<std::size_t> slot(n, kUnreachable);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t& s = slot[label[v]];
    if (s == kUnreachable) {
      s = groups.size();
      groups.emplace_back();
    }
    groups[s].push_back(v);
  }
  return groups;
}

}  // namespace

double average_degree(const VisibilityGraph& g) {
  if (g.node_count() == 0) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) /
         static_cast<double>(g.node_count());
}

double average_clustering(const VisibilityGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return 0.0;
  const auto tri = triangles_per_node(g);
  double sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t k = g.degree(v);
    if (k < 2) continue;
    sum += static_cast<double>(tri[v]) / pairs(k);
  }
  return sum / static_cast<double>(n);
}

std::size_t triangle_count(const VisibilityGraph& g) {
  const auto tri = triangles_per_node(g);
  return std::accumulate(tri.begin(), tri.end(), std::size_t{0}) / 3;
}

double transitivity(const VisibilityGraph& g) {
  double triples = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) triples += pairs(g.degree(v));
  if (triples == 0.0) return 0.0;
  return 3.0 * static_cast<double>(triangle_count(g)) / triples;
}

double density(const VisibilityGraph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<std::size_t> shortest_path_lengths(const VisibilityGraph& g,
                                               std::size_t source) {
  if (source >= g.node_count()) {
    throw Error(ErrorCode::kBadNode,
                "source " + std::to_string(source) + " outside [0, " +
                    std::to_string(g.node_count()) + ")");
  }
  std::vector<std::size_t> dist(g.node_count()), queue;
  bfs(g, source, dist, queue);
  return dist;
}

DiameterResult diameter(const VisibilityGraph& g) {
  const auto comps = connected_components(g);
  const auto sweep = sweep_all_pairs(g, comps);
  return {sweep.largest_component_diameter, comps.size() > 1};
}

PathLengthSummary average_shortest_path(const VisibilityGraph& g) {
  const auto comps = connected_components(g);
  const auto sweep = sweep_all_pairs(g, comps);
  PathLengthSummary out;
  out.disconnected_pairs = sweep.unreachable_ordered / 2;
  if (sweep.reachable_ordered > 0) {
    out.mean = sweep.hop_sum / static_cast<double>(sweep.reachable_ordered);
  }
  return out;
}

double global_efficiency(const VisibilityGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) return 0.0;
  const auto sweep = sweep_all_pairs(g, connected_components(g));
  return sweep.inverse_sum /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<std::vector<std::size_t>> connected_components(
    const VisibilityGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> label(n, kUnreachable);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (label[root] != kUnreachable) continue;
    label[root] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : g.neighbors(u)) {
        if (label[v] == kUnreachable) {
          label[v] = root;
          stack.push_back(v);
        }
      }
    }
  }
  return group_by_label(label);
}

std::vector<std::vector<std::size_t>> communities(const VisibilityGraph& g,
                                                  std::uint64_t seed) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::vector<std::size_t> order(label);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::size_t> touched;
  Xoshiro256 rng(seed);

  constexpr int kMaxSweeps = 1000;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
    bool changed = false;
    for (std::size_t v : order) {
      const auto& nbrs = g.neighbors(v);
      if (nbrs.empty()) continue;
      touched.clear();
      std::size_t best = 0;
      for (std::size_t u : nbrs) {
        const std::size_t l = label[u];
        if (count[l]++ == 0) touched.push_back(l);
        best = std::max(best, count[l]);
      }
      std::size_t chosen = label[v];
      if (count[chosen] != best) {
        chosen = kUnreachable;
        for (std::size_t l : touched) {
          if (count[l] == best) chosen = std::min(chosen, l);
        }
      }
      for (std::size_t l : touched) count[l] = 0;
      if (chosen != label[v]) {
        label[v] = chosen;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return group_by_label(label);
}

MetricReport compute_metrics(const VisibilityGraph& g,
                             std::uint64_t community_seed,
                             bool with_communities) {
  MetricReport r;
  const std::size_t n = g.node_count();
  r.node_count = n;
  r.edge_count = g.edge_count();
  r.avg_degree = average_degree(g);
  r.density = density(g);

  const auto tri = triangles_per_node(g);
  double local_sum = 0.0;
  double triples = 0.0;
  std::size_t corners = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t k = g.degree(v);
    corners += tri[v];
    triples += pairs(k);
    if (k >= 2) local_sum += static_cast<double>(tri[v]) / pairs(k);
  }
  if (n > 0) r.avg_clustering = local_sum / static_cast<double>(n);
  if (triples > 0.0) {
    r.transitivity = static_cast<double>(corners) / triples;
  }

  const auto comps = connected_components(g);
  const auto sweep = sweep_all_pairs(g, comps);
  r.component_count = comps.size();
  r.disconnected = comps.size() > 1;
  r.diameter = sweep.largest_component_diameter;
  r.disconnected_pairs = sweep.unreachable_ordered / 2;
  if (sweep.reachable_ordered > 0) {
    r.avg_shortest_path =
        sweep.hop_sum / static_cast<double>(sweep.reachable_ordered);
  }
  if (n >= 2) {
    r.global_efficiency =
        sweep.inverse_sum /
        (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  if (with_communities) {
    r.community_count = communities(g, community_seed).size();
  }
  return r;
}

}  // namespace graphts
