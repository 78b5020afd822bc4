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
#include <cstdint>
#include <limits>
#include <vector>

#include "graphts/visibility.hpp"

namespace graphts {

inline constexpr std::size_t kUnreachable =
    std::numeric_limits<std::size_t>::max();

double average_degree(const VisibilityGraph& g);

// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
double average_clustering(const VisibilityGraph& g);

// 3 * triangles / connected triples, 0 when there are no triples.
double transitivity(const VisibilityGraph& g);

// 2E / (n (n - 1)); 0 for n <= 1.
double density(const VisibilityGraph& g);

std::size_t triangle_count(const VisibilityGraph& g);

// BFS hop counts from `source`; unreachable nodes hold kUnreachable.
// Throws kBadNode when source >= n.
std::vector<std::size_t> shortest_path_lengths(const VisibilityGraph& g,
                                               std::size_t source);

struct DiameterResult {
  std::size_t hops = 0;       // over the largest component
  bool disconnected = false;  // more than one component
};
DiameterResult diameter(const VisibilityGraph& g);

struct PathLengthSummary {
  double mean = 0.0;                  // over reachable ordered pairs
  std::size_t disconnected_pairs = 0; // unordered pairs with no path
};
PathLengthSummary average_shortest_path(const VisibilityGraph& g);

// (1 / (n (n - 1))) * sum over ordered pairs of 1 / d(i, j), 1/inf = 0.
double global_efficiency(const VisibilityGraph& g);

// Components, each sorted ascending; components ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(
    const VisibilityGraph& g);

// Asynchronous label propagation. Every sweep visits the nodes in an order
// drawn from Xoshiro256(seed) (Fisher-Yates, sweep after sweep from the same
// stream). A node keeps its label when that label is among the most frequent
// in its neighborhood, otherwise it takes the smallest most-frequent label.
// Stops after a sweep with no change (or 1000 sweeps). Communities are
// returned like connected_components.
std::vector<std::vector<std::size_t>> communities(const VisibilityGraph& g,
                                                  std::uint64_t seed);

struct MetricReport {
  double avg_degree = 0.0;
  double avg_clustering = 0.0;
  double transitivity = 0.0;
  double density = 0.0;
  std::size_t diameter = 0;
  double global_efficiency = 0.0;
  double avg_shortest_path = 0.0;
  std::size_t component_count = 0;
  std::size_t community_count = 0;
  bool disconnected = false;
  std::size_t disconnected_pairs = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
};

// All of the above from a single all-pairs BFS sweep. Community detection is
// skipped (community_count left 0) when `with_communities` is false.
MetricReport compute_metrics(const VisibilityGraph& g,
                             std::uint64_t community_seed = 0,
                             bool with_communities = true);

}  // namespace graphts
