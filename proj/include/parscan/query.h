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

// (mu, epsilon) clustering queries answered from a ScanIndex.
//
// The cores are a prefix of CO[mu] and the epsilon-similar edges of each core
// are a prefix of its neighbor order, so a query only touches those prefixes
// (located by doubling search) plus the union-find work on them.

#ifndef PARSCAN_QUERY_H_
#define PARSCAN_QUERY_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"
#include "parscan/index.h"
#include "parscan/union_find.h"

namespace parscan {

struct QueryParams {
  std::uint64_t mu = 2;
  double epsilon = 0.5;
  bool deterministic_borders = true;

  void Validate() const {
    if (mu < 2) throw Error(ErrorCode::kInvalidArgument, "mu must be >= 2");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
    }
  }
};

using ClusterId = std::uint32_t;
inline constexpr ClusterId kUnclustered = std::numeric_limits<ClusterId>::max();

// Cluster ids are canonical: numbered 0..C-1 in order of each cluster's
// smallest member id, so equal partitions compare equal.
struct Clustering {
  std::vector<ClusterId> assignment;
  std::vector<char> is_core;
  std::uint32_t num_clusters = 0;

  bool clustered(VertexId v) const { return assignment[v] != kUnclustered; }
  std::size_t size() const { return assignment.size(); }

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

enum class VertexRole : std::uint8_t { kClustered, kHub, kOutlier };
using Labels = std::vector<VertexRole>;

struct SimilarEdge {
  VertexId core;
  VertexId neighbor;
  double similarity;

  friend bool operator==(const SimilarEdge&, const SimilarEdge&) = default;
};

// Work counters for the output-sensitivity check.
struct QueryStats {
  std::uint64_t probes = 0;
  std::uint64_t cores = 0;
  std::uint64_t similar_edges = 0;

  std::uint64_t visits() const { return probes + cores + similar_edges; }
};

// Length of the longest prefix of a non-increasing sequence whose values are
// all >= threshold. Exponential probing then binary search; O(log j) probes.
inline std::size_t DoublingSearchPrefix(std::span<const double> values,
                                        double threshold,
                                        std::uint64_t* probes = nullptr) {
  std::uint64_t count = 0;
  auto passes = [&](std::size_t i) {
    ++count;
    return values[i] >= threshold;
  };
  std::size_t result = 0;
  if (!values.empty() && passes(0)) {
    std::size_t good = 0;
    std::size_t bound = 1;
    while (bound < values.size() && passes(bound)) {
      good = bound;
      bound *= 2;
    }
    bound = std::min(bound, values.size());
    // values[good] passes; values[bound] fails or is past the end.
    std::size_t lo = good + 1;
    std::size_t hi = bound;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (passes(mid)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    result = lo;
  }
  if (probes != nullptr) *probes += count;
  return result;
}

// Exactly {v : |N̄(v)| >= mu and t_mu(v) >= epsilon}, in core order.
inline std::span<const VertexId> GetCores(const ScanIndex& index,
                                          std::uint64_t mu, double epsilon,
                                          QueryStats* stats = nullptr) {
  const CoreOrder& co = index.core_order;
  if (!co.has(mu)) return {};
  std::uint64_t probes = 0;
  const std::size_t count =
      DoublingSearchPrefix(co.core_thresholds(mu), epsilon, &probes);
  if (stats != nullptr) {
    stats->probes += probes;
    stats->cores += count;
  }
  return co.candidates(mu).first(count);
}

// For every core u, the neighbors x != u with sigma(u, x) >= epsilon, taken as
// the prefix of NO[u] after u itself.
inline std::vector<SimilarEdge> SimilarEdges(const ScanIndex& index,
                                             std::span<const VertexId> cores,
                                             double epsilon,
                                             QueryStats* stats = nullptr) {
  const NeighborOrder& no = index.neighbor_order;
  const std::size_t count = cores.size();
  std::vector<EdgeIndex> offsets(count + 1, 0);
  std::uint64_t probes = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : probes)
  for (std::size_t i = 0; i < count; ++i) {
    auto scores = no.scores(cores[i]).subspan(1);
    offsets[i + 1] = DoublingSearchPrefix(scores, epsilon, &probes);
  }
  for (std::size_t i = 0; i < count; ++i) offsets[i + 1] += offsets[i];
  std::vector<SimilarEdge> edges(offsets[count]);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t i = 0; i < count; ++i) {
    const VertexId u = cores[i];
    auto order = no.order(u);
    auto scores = no.scores(u);
    const EdgeIndex base = offsets[i];
    const EdgeIndex len = offsets[i + 1] - base;
    for (EdgeIndex j = 0; j < len; ++j) {
      edges[base + j] = {u, order[1 + j], scores[1 + j]};
    }
  }
  if (stats != nullptr) {
    stats->probes += probes;
    stats->similar_edges += edges.size();
  }
  return edges;
}

// Relabels raw labels (any ids < n, or kUnclustered) to 0..C-1 ordered by
// each cluster's smallest member. Returns the cluster count.
inline std::uint32_t CanonicalizeLabels(std::vector<ClusterId>& assignment) {
  std::vector<ClusterId> remap;
  std::uint32_t next = 0;
  for (ClusterId& label : assignment) {
    if (label == kUnclustered) continue;
    if (label >= remap.size()) remap.resize(label + 1, kUnclustered);
    if (remap[label] == kUnclustered) remap[label] = next++;
    label = remap[label];
  }
  return next;
}

inline Clustering Cluster(const ScanIndex& index, const QueryParams& params,
                          QueryStats* stats = nullptr) {
  params.Validate();
  const std::size_t n = index.num_vertices;
  Clustering result;
  result.assignment.assign(n, kUnclustered);
  result.is_core.assign(n, 0);

  const std::span<const VertexId> cores =
      GetCores(index, params.mu, params.epsilon, stats);
  for (VertexId c : cores) result.is_core[c] = 1;
  const std::vector<SimilarEdge> similar =
      SimilarEdges(index, cores, params.epsilon, stats);

  ConcurrentUnionFind components(n);
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::size_t i = 0; i < similar.size(); ++i) {
    const SimilarEdge& e = similar[i];
    if (result.is_core[e.neighbor] && e.core < e.neighbor) {
      components.Unite(e.core, e.neighbor);
    }
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < cores.size(); ++i) {
    result.assignment[cores[i]] = components.Find(cores[i]);
  }

  if (params.deterministic_borders) {
    // Most similar epsilon-similar core, ties to the lower core id.
    std::vector<SimilarEdge> border_edges;
    for (const SimilarEdge& e : similar) {
      if (!result.is_core[e.neighbor]) border_edges.push_back(e);
    }
    std::sort(border_edges.begin(), border_edges.end(),
              [](const SimilarEdge& a, const SimilarEdge& b) {
                if (a.neighbor != b.neighbor) return a.neighbor < b.neighbor;
                if (a.similarity != b.similarity) {
                  return a.similarity > b.similarity;
                }
                return a.core < b.core;
              });
    for (std::size_t i = 0; i < border_edges.size(); ++i) {
      if (i > 0 && border_edges[i - 1].neighbor == border_edges[i].neighbor) {
        continue;
      }
      result.assignment[border_edges[i].neighbor] =
          result.assignment[border_edges[i].core];
    }
  } else {
    // First writer wins; any epsilon-similar core's cluster is valid.
#pragma omp parallel for schedule(dynamic, 1024)
    for (std::size_t i = 0; i < similar.size(); ++i) {
      const SimilarEdge& e = similar[i];
      if (result.is_core[e.neighbor]) continue;
      ClusterId expected = kUnclustered;
      std::atomic_ref<ClusterId>(result.assignment[e.neighbor])
          .compare_exchange_strong(expected, result.assignment[e.core],
                                   std::memory_order_relaxed);
    }
  }

  result.num_clusters = CanonicalizeLabels(result.assignment);
  return result;
}

namespace internal {

template <typename NeighborsOf>
Labels LabelUnclustered(std::size_t n, const Clustering& clustering,
                        NeighborsOf neighbors_of) {
  Labels labels(n, VertexRole::kClustered);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t v = 0; v < n; ++v) {
    if (clustering.clustered(static_cast<VertexId>(v))) continue;
    ClusterId seen = kUnclustered;
    bool hub = false;
    for (VertexId u : neighbors_of(static_cast<VertexId>(v))) {
      const ClusterId c = clustering.assignment[u];
      if (c == kUnclustered || c == seen) continue;
      if (seen == kUnclustered) {
        seen = c;
      } else {
        hub = true;
        break;
      }
    }
    labels[v] = hub ? VertexRole::kHub : VertexRole::kOutlier;
  }
  return labels;
}

}  // namespace internal

// Unclustered vertices neighboring >= 2 distinct clusters are hubs; the
// remaining unclustered vertices are outliers.
inline Labels LabelHubsOutliers(const Graph& graph,
                                const Clustering& clustering) {
  if (clustering.size() != graph.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument,
                "clustering does not match graph size");
  }
  return internal::LabelUnclustered(
      graph.num_vertices(), clustering,
      [&graph](VertexId v) { return graph.neighbors(v); });
}

// Same labels computed from the index's neighbor order (N(v) = NO[v] minus v).
inline Labels LabelHubsOutliers(const ScanIndex& index,
                                const Clustering& clustering) {
  if (clustering.size() != index.num_vertices) {
    throw Error(ErrorCode::kInvalidArgument,
                "clustering does not match index size");
  }
  return internal::LabelUnclustered(
      index.num_vertices, clustering, [&index](VertexId v) {
        return index.neighbor_order.order(v).subspan(1);
      });
}

}  // namespace parscan

#endif  // PARSCAN_QUERY_H_
