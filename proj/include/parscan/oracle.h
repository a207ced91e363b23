// Copyright 2026 The parscan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force SCAN straight from the definitions: set-based similarities,
// direct epsilon-neighborhood counting, breadth-first cluster expansion.
// Shares no code path with the index pipeline beyond reading the Graph, so
// it can serve as ground truth in equivalence tests. Single-threaded.

#ifndef PARSCAN_ORACLE_H_
#define PARSCAN_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"
#include "parscan/query.h"
#include "parscan/similarity.h"

namespace parscan {

inline constexpr std::size_t kOracleMaxVertices = 10000;

struct OracleResult {
  Clustering clustering;
  Labels labels;
};

namespace oracle {

// Closed neighborhood of every vertex as id -> weight, with self weight 1.
inline std::vector<std::map<VertexId, double>> ClosedNeighborhoods(
    const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  std::vector<std::map<VertexId, double>> closed(n);
  const auto offsets = graph.offsets();
  const auto targets = graph.flat_neighbors();
  const auto weights = graph.flat_weights();
  for (std::size_t v = 0; v < n; ++v) {
    closed[v][static_cast<VertexId>(v)] = 1.0;
    for (EdgeIndex p = offsets[v]; p < offsets[v + 1]; ++p) {
      closed[v][targets[p]] = graph.weighted() ? weights[p] : 1.0;
    }
  }
  return closed;
}

inline double PairSimilarity(const std::map<VertexId, double>& a,
                             const std::map<VertexId, double>& b,
                             Measure measure) {
  std::set<VertexId> set_a;
  std::set<VertexId> set_b;
  for (const auto& [x, w] : a) set_a.insert(x);
  for (const auto& [x, w] : b) set_b.insert(x);
  std::vector<VertexId> inter;
  std::set_intersection(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(),
                        std::back_inserter(inter));
  switch (measure) {
    case Measure::kCosine:
      return static_cast<double>(inter.size()) /
             std::sqrt(static_cast<double>(set_a.size()) *
                       static_cast<double>(set_b.size()));
    case Measure::kJaccard: {
      std::vector<VertexId> uni;
      std::set_union(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(),
                     std::back_inserter(uni));
      return static_cast<double>(inter.size()) /
             static_cast<double>(uni.size());
    }
    case Measure::kWeightedCosine: {
      double dot = 0.0;
      for (VertexId x : inter) dot += a.at(x) * b.at(x);
      double norm_a = 0.0;
      double norm_b = 0.0;
      for (const auto& [x, w] : a) norm_a += w * w;
      for (const auto& [x, w] : b) norm_b += w * w;
      return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    }
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "oracle supports exact measures only");
  }
}

}  // namespace oracle

// sigma(u, v) for every adjacent pair, keyed by (min id, max id).
inline std::map<std::pair<VertexId, VertexId>, double> NaiveSimilarities(
    const Graph& graph, Measure measure) {
  if (measure == Measure::kWeightedCosine && !graph.weighted()) {
    throw Error(ErrorCode::kInvalidArgument,
                "weighted-cosine requires a weighted graph");
  }
  const auto closed = oracle::ClosedNeighborhoods(graph);
  std::map<std::pair<VertexId, VertexId>, double> sims;
  for (std::size_t u = 0; u < closed.size(); ++u) {
    for (const auto& [v, w] : closed[u]) {
      if (v <= u) continue;
      sims[{static_cast<VertexId>(u), v}] =
          oracle::PairSimilarity(closed[u], closed[v], measure);
    }
  }
  return sims;
}

inline OracleResult NaiveScan(const Graph& graph, Measure measure,
                              const QueryParams& params) {
  const std::size_t n = graph.num_vertices();
  if (n > kOracleMaxVertices) {
    throw Error(ErrorCode::kSizeGuard,
                "naive SCAN limited to " + std::to_string(kOracleMaxVertices) +
                    " vertices");
  }
  params.Validate();
  const auto sims = NaiveSimilarities(graph, measure);
  const auto closed = oracle::ClosedNeighborhoods(graph);
  auto sigma = [&](VertexId a, VertexId b) {
    if (a == b) return 1.0;
    return sims.at({std::min(a, b), std::max(a, b)});
  };

  std::vector<char> core(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t eps_neighborhood = 0;
    for (const auto& [u, w] : closed[v]) {
      if (sigma(static_cast<VertexId>(v), u) >= params.epsilon) {
        ++eps_neighborhood;
      }
    }
    core[v] = eps_neighborhood >= params.mu;
  }

  // Breadth-first expansion over epsilon-similar core-core links.
  std::vector<long> raw(n, -1);
  long next_component = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!core[s] || raw[s] != -1) continue;
    std::deque<VertexId> frontier{static_cast<VertexId>(s)};
    raw[s] = next_component;
    while (!frontier.empty()) {
      const VertexId v = frontier.front();
      frontier.pop_front();
      for (const auto& [u, w] : closed[v]) {
        if (u == v || !core[u] || raw[u] != -1) continue;
        if (sigma(v, u) >= params.epsilon) {
          raw[u] = next_component;
          frontier.push_back(u);
        }
      }
    }
    ++next_component;
  }

  // Borders join the most similar epsilon-similar core, lower id on ties.
  std::vector<long> border(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    if (core[v]) continue;
    double best = -1.0;
    VertexId best_core = kInvalidVertex;
    for (const auto& [u, w] : closed[v]) {
      if (u == v || !core[u]) continue;
      const double s = sigma(static_cast<VertexId>(v), u);
      if (s < params.epsilon) continue;
      if (s > best || (s == best && u < best_core)) {
        best = s;
        best_core = u;
      }
    }
    if (best_core != kInvalidVertex) border[v] = raw[best_core];
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (border[v] != -1) raw[v] = border[v];
  }

  OracleResult result;
  result.clustering.assignment.assign(n, kUnclustered);
  result.clustering.is_core = core;
  std::map<long, ClusterId> canonical;
  for (std::size_t v = 0; v < n; ++v) {
    if (raw[v] == -1) continue;
    auto [it, inserted] = canonical.try_emplace(
        raw[v], static_cast<ClusterId>(canonical.size()));
    result.clustering.assignment[v] = it->second;
  }
  result.clustering.num_clusters = static_cast<std::uint32_t>(canonical.size());

  result.labels.assign(n, VertexRole::kClustered);
  for (std::size_t v = 0; v < n; ++v) {
    if (raw[v] != -1) continue;
    std::set<long> neighboring;
    for (const auto& [u, w] : closed[v]) {
      if (u != v && raw[u] != -1) neighboring.insert(raw[u]);
    }
    result.labels[v] =
        neighboring.size() >= 2 ? VertexRole::kHub : VertexRole::kOutlier;
  }
  return result;
}

}  // namespace parscan

#endif  // PARSCAN_ORACLE_H_
