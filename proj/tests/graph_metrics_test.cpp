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

#include <vector>

#include <gtest/gtest.h>

#include "graphts/error.hpp"
#include "graphts/random.hpp"
#include "oracles.hpp"

namespace graphts {
namespace {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

VisibilityGraph complete(std::size_t n) {
  EdgeList e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return VisibilityGraph::from_edges(n, e);
}

VisibilityGraph path(std::size_t n) {
  EdgeList e;
  for (std::size_t u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return VisibilityGraph::from_edges(n, e);
}

VisibilityGraph cycle(std::size_t n) {
  EdgeList e;
  for (std::size_t u = 0; u < n; ++u) e.emplace_back(std::min(u, (u + 1) % n),
                                                     std::max(u, (u + 1) % n));
  return VisibilityGraph::from_edges(n, e);
}

VisibilityGraph star(std::size_t leaves) {
  EdgeList e;
  for (std::size_t v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return VisibilityGraph::from_edges(leaves + 1, e);
}

VisibilityGraph triangle_with_pendant() {
  const EdgeList e{{0, 1}, {0, 2}, {1, 2}, {2, 3}};
  return VisibilityGraph::from_edges(4, e);
}

VisibilityGraph two_disjoint_edges() {
  const EdgeList e{{0, 1}, {2, 3}};
  return VisibilityGraph::from_edges(4, e);
}

TEST(GraphMetrics, AverageDegree) {
  EXPECT_DOUBLE_EQ(average_degree(complete(4)), 3.0);
  EXPECT_DOUBLE_EQ(average_degree(path(4)), 1.5);
  EXPECT_DOUBLE_EQ(average_degree(VisibilityGraph(3, GraphKind::kNvg)), 0.0);
}

TEST(GraphMetrics, Clustering) {
  EXPECT_DOUBLE_EQ(average_clustering(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(average_clustering(star(4)), 0.0);
  EXPECT_NEAR(average_clustering(triangle_with_pendant()), 7.0 / 12.0, 1e-15);
}

TEST(GraphMetrics, Transitivity) {
  EXPECT_DOUBLE_EQ(transitivity(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(transitivity(path(4)), 0.0);
  EXPECT_DOUBLE_EQ(transitivity(triangle_with_pendant()), 0.6);
  EXPECT_EQ(triangle_count(complete(5)), 10u);
  EXPECT_DOUBLE_EQ(transitivity(VisibilityGraph(2, GraphKind::kNvg)), 0.0);
}

TEST(GraphMetrics, Density) {
  EXPECT_DOUBLE_EQ(density(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(density(path(4)), 0.5);
  EXPECT_DOUBLE_EQ(density(VisibilityGraph(1, GraphKind::kNvg)), 0.0);
}

TEST(GraphMetrics, ShortestPathLengths) {
  EXPECT_EQ(shortest_path_lengths(path(4), 0), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(shortest_path_lengths(complete(4), 2), (std::vector<std::size_t>{1, 1, 0, 1}));
  EXPECT_EQ(shortest_path_lengths(two_disjoint_edges(), 0),
            (std::vector<std::size_t>{0, 1, kUnreachable, kUnreachable}));
  try {
    shortest_path_lengths(path(4), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadNode);
  }
}

TEST(GraphMetrics, Diameter) {
  EXPECT_EQ(diameter(complete(4)).hops, 1u);
  EXPECT_EQ(diameter(path(4)).hops, 3u);
  EXPECT_EQ(diameter(cycle(6)).hops, 3u);
  EXPECT_FALSE(diameter(cycle(6)).disconnected);
  // Largest component is the path 2-3-4.
  const EdgeList e{{0, 1}, {2, 3}, {3, 4}};
  const auto d = diameter(VisibilityGraph::from_edges(5, e));
  EXPECT_EQ(d.hops, 2u);
  EXPECT_TRUE(d.disconnected);
}

TEST(GraphMetrics, AverageShortestPath) {
  EXPECT_DOUBLE_EQ(average_shortest_path(complete(4)).mean, 1.0);
  EXPECT_NEAR(average_shortest_path(path(3)).mean, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(average_shortest_path(path(4)).mean, 10.0 / 6.0, 1e-15);
  const auto split = average_shortest_path(two_disjoint_edges());
  EXPECT_DOUBLE_EQ(split.mean, 1.0);
  EXPECT_EQ(split.disconnected_pairs, 4u);
}

TEST(GraphMetrics, GlobalEfficiency) {
  EXPECT_DOUBLE_EQ(global_efficiency(complete(4)), 1.0);
  EXPECT_NEAR(global_efficiency(path(3)), 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(global_efficiency(two_disjoint_edges()), 1.0 / 3.0, 1e-15);
}

TEST(GraphMetrics, Components) {
  EXPECT_EQ(connected_components(complete(4)).size(), 1u);
  const auto comps = connected_components(two_disjoint_edges());
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(comps[1], (std::vector<std::size_t>{2, 3}));
}

TEST(GraphMetrics, CommunitiesOnCompleteGraph) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(communities(complete(6), seed).size(), 1u);
  }
}

TEST(GraphMetrics, CommunitiesSplitBridgedCliques) {
  EdgeList e;
  for (std::size_t base : {0u, 4u})
    for (std::size_t u = 0; u < 4; ++u)
      for (std::size_t v = u + 1; v < 4; ++v) e.emplace_back(base + u, base + v);
  e.emplace_back(3, 4);
  const auto g = VisibilityGraph::from_edges(8, e);
  const auto parts = communities(g, 42);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(parts[1], (std::vector<std::size_t>{4, 5, 6, 7}));

  // The 2-split has higher modularity than the trivial partition.
  const double m = static_cast<double>(g.edge_count());
  auto modularity = [&](const std::vector<std::vector<std::size_t>>& p) {
    double q = 0.0;
    for (const auto& c : p) {
      double inside = 0.0, degree = 0.0;
      for (std::size_t u : c) {
        degree += static_cast<double>(g.degree(u));
        for (std::size_t v : c) inside += g.has_edge(u, v) ? 1.0 : 0.0;
      }
      q += inside / (2.0 * m) - (degree / (2.0 * m)) * (degree / (2.0 * m));
    }
    return q;
  };
  EXPECT_GT(modularity(parts), modularity({{0, 1, 2, 3, 4, 5, 6, 7}}));
}

TEST(GraphMetrics, CommunitiesDeterministic) {
  Xoshiro256 rng(8);
  EdgeList e;
  for (std::size_t u = 0; u < 60; ++u)
    for (std::size_t v = u + 1; v < 60; ++v)
      if (rng.uniform() < 0.08) e.emplace_back(u, v);
  const auto g = VisibilityGraph::from_edges(60, e);
  EXPECT_EQ(communities(g, 5), communities(g, 5));
  std::size_t covered = 0;
  for (const auto& c : communities(g, 5)) covered += c.size();
  EXPECT_EQ(covered, 60u);
}

TEST(GraphMetrics, ComputeMetricsMatchesOracleOnRandomGraphs) {
  Xoshiro256 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const double p = rng.uniform(0.0, 0.5);
    EdgeList e;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng.uniform() < p) e.emplace_back(u, v);
    const auto g = VisibilityGraph::from_edges(n, e);
    const auto want = oracle::features(n, e);
    const auto got = compute_metrics(g, 0);
    ASSERT_NEAR(got.avg_degree, want.avg_degree, 1e-12);
    ASSERT_NEAR(got.avg_clustering, want.avg_clustering, 1e-12);
    ASSERT_NEAR(got.transitivity, want.transitivity, 1e-12);
    ASSERT_NEAR(got.density, want.density, 1e-12);
    ASSERT_EQ(static_cast<double>(got.diameter), want.diameter);
    ASSERT_NEAR(got.global_efficiency, want.global_efficiency, 1e-12);
    ASSERT_NEAR(got.avg_shortest_path, want.avg_shortest_path, 1e-12);
    ASSERT_EQ(got.component_count, connected_components(g).size());
    ASSERT_EQ(got.node_count, n);
    ASSERT_EQ(got.edge_count, e.size());
    ASSERT_EQ(got.disconnected, got.component_count > 1);
  }
}

TEST(GraphMetrics, CommunitiesCanBeSkipped) {
  const auto r = compute_metrics(complete(5), 0, false);
  EXPECT_EQ(r.community_count, 0u);
  EXPECT_EQ(compute_metrics(complete(5), 0).community_count, 1u);
}

}  // namespace
}  // namespace graphts
