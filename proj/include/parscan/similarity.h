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

// Exact structural similarity of every edge.
//
// Shared-neighbor counts come from triangle enumeration on the
// degree-oriented view: each directed edge (u -> v) merges the sorted
// out-lists of u and v, and every triangle found credits all three of its
// edges. Weighted dot products are accumulated per edge by merging the two
// full neighbor lists in ascending id order, so the floating-point summation
// order never depends on scheduling.

#ifndef PARSCAN_SIMILARITY_H_
#define PARSCAN_SIMILARITY_H_

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"

namespace parscan {

enum class Measure : std::uint8_t {
  kCosine = 0,
  kJaccard = 1,
  kWeightedCosine = 2,
  kApproxCosine = 3,
  kApproxJaccard = 4,
};

inline std::string_view MeasureName(Measure m) {
  switch (m) {
    case Measure::kCosine:
      return "cosine";
    case Measure::kJaccard:
      return "jaccard";
    case Measure::kWeightedCosine:
      return "weighted-cosine";
    case Measure::kApproxCosine:
      return "approx-cosine";
    case Measure::kApproxJaccard:
      return "approx-jaccard";
  }
  return "unknown";
}

inline std::optional<Measure> ParseMeasure(std::string_view name) {
  for (auto m : {Measure::kCosine, Measure::kJaccard, Measure::kWeightedCosine,
                 Measure::kApproxCosine, Measure::kApproxJaccard}) {
    if (MeasureName(m) == name) return m;
  }
  return std::nullopt;
}

inline bool IsExactMeasure(Measure m) {
  return m == Measure::kCosine || m == Measure::kJaccard ||
         m == Measure::kWeightedCosine;
}

// Per-half-edge similarity scores; scores[p] == scores[twin(p)] bitwise.
struct SimilarityTable {
  Measure measure = Measure::kCosine;
  std::vector<double> scores;

  double operator[](HalfEdgeId e) const { return scores[e.position]; }
  std::size_t size() const { return scores.size(); }

  friend bool operator==(const SimilarityTable&,
                         const SimilarityTable&) = default;
};

// norms[v] = sqrt(sum over x in N̄(v) of w(v, x)^2), with w(v, v) = 1.
inline std::vector<double> ComputeVertexNorms(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  std::vector<double> norms(n);
#pragma omp parallel for schedule(static)
  for (std::size_t v = 0; v < n; ++v) {
    double sum = 1.0;
    for (double w : graph.weights(static_cast<VertexId>(v))) sum += w * w;
    norms[v] = std::sqrt(sum);
  }
  return norms;
}

// Returns |N(u) ∩ N(v)| for every half-edge (both directions filled).
inline std::vector<std::uint32_t> IntersectCountsViaMerge(
    const Graph& graph, const OrientedGraph& view) {
  const std::size_t n = view.num_vertices();
  std::vector<std::uint32_t> oriented(view.num_edges(), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t u = 0; u < n; ++u) {
    for (EdgeIndex e = view.offsets[u]; e < view.offsets[u + 1]; ++e) {
      const VertexId v = view.targets[e];
      EdgeIndex i = view.offsets[u];
      EdgeIndex j = view.offsets[v];
      const EdgeIndex i_end = view.offsets[u + 1];
      const EdgeIndex j_end = view.offsets[v + 1];
      std::uint32_t found = 0;
      while (i < i_end && j < j_end) {
        const VertexId a = view.targets[i];
        const VertexId b = view.targets[j];
        if (a < b) {
          ++i;
        } else if (b < a) {
          ++j;
        } else {
          ++found;
          std::atomic_ref<std::uint32_t>(oriented[i]).fetch_add(
              1, std::memory_order_relaxed);
          std::atomic_ref<std::uint32_t>(oriented[j]).fetch_add(
              1, std::memory_order_relaxed);
          ++i;
          ++j;
        }
      }
      if (found != 0) {
        std::atomic_ref<std::uint32_t>(oriented[e]).fetch_add(
            found, std::memory_order_relaxed);
      }
    }
  }
  std::vector<std::uint32_t> counts(graph.num_half_edges(), 0);
#pragma omp parallel for schedule(static)
  for (std::size_t e = 0; e < view.num_edges(); ++e) {
    const EdgeIndex p = view.half_edges[e];
    counts[p] = oriented[e];
    counts[graph.twin({p}).position] = oriented[e];
  }
  return counts;
}

// Sum over x in N̄(u) ∩ N̄(v) of w(u, x) * w(v, x), with w(x, x) = 1, summed
// in ascending x. `weight_uv` is w(u, v).
inline double SharedNeighborDot(const Graph& graph, VertexId u, VertexId v,
                                double weight_uv) {
  auto nu = graph.neighbors(u);
  auto nv = graph.neighbors(v);
  auto wu = graph.weights(u);
  auto wv = graph.weights(v);
  const VertexId lo = std::min(u, v);
  const VertexId hi = std::max(u, v);
  // Endpoint terms x = u and x = v both equal w(u, v).
  bool lo_done = false;
  bool hi_done = false;
  double sum = 0.0;
  auto flush_endpoints_below = [&](VertexId x) {
    if (!lo_done && lo < x) {
      sum += weight_uv;
      lo_done = true;
    }
    if (!hi_done && hi < x) {
      sum += weight_uv;
      hi_done = true;
    }
  };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nv[j] < nu[i]) {
      ++j;
    } else {
      flush_endpoints_below(nu[i]);
      sum += wu[i] * wv[j];
      ++i;
      ++j;
    }
  }
  flush_endpoints_below(kInvalidVertex);
  return sum;
}

// Cosine of closed neighborhoods from the shared-count c = |N(u) ∩ N(v)|.
inline double CosineFromCounts(std::size_t shared, std::size_t closed_u,
                               std::size_t closed_v) {
  return static_cast<double>(shared + 2) /
         std::sqrt(static_cast<double>(closed_u) *
                   static_cast<double>(closed_v));
}

inline double JaccardFromCounts(std::size_t shared, std::size_t closed_u,
                                std::size_t closed_v) {
  const std::size_t inter = shared + 2;
  return static_cast<double>(inter) /
         static_cast<double>(closed_u + closed_v - inter);
}

inline SimilarityTable ComputeSimilarities(const Graph& graph,
                                           Measure measure) {
  if (!IsExactMeasure(measure)) {
    throw Error(ErrorCode::kInvalidArgument,
                "exact similarity requested with approximate measure " +
                    std::string(MeasureName(measure)));
  }
  if (measure == Measure::kWeightedCosine && !graph.weighted()) {
    throw Error(ErrorCode::kInvalidArgument,
                "weighted-cosine requires a weighted graph");
  }
  SimilarityTable table;
  table.measure = measure;
  table.scores.assign(graph.num_half_edges(), 0.0);
  const OrientedGraph view = DegreeOrientedView(graph);
  const std::size_t n = graph.num_vertices();

  if (measure == Measure::kWeightedCosine) {
    const std::vector<double> norms = ComputeVertexNorms(graph);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t u = 0; u < n; ++u) {
      for (EdgeIndex e = view.offsets[u]; e < view.offsets[u + 1]; ++e) {
        const VertexId v = view.targets[e];
        const EdgeIndex p = view.half_edges[e];
        const double dot = SharedNeighborDot(
            graph, static_cast<VertexId>(u), v, graph.weight({p}));
        const double score = dot / (norms[u] * norms[v]);
        table.scores[p] = score;
        table.scores[graph.twin({p}).position] = score;
      }
    }
    return table;
  }

  const std::vector<std::uint32_t> counts =
      IntersectCountsViaMerge(graph, view);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t u = 0; u < n; ++u) {
    const auto uid = static_cast<VertexId>(u);
    for (EdgeIndex p = graph.begin_offset(uid); p < graph.end_offset(uid);
         ++p) {
      const VertexId v = graph.target({p});
      if (v < uid) continue;
      const std::size_t cu = graph.closed_degree(uid);
      const std::size_t cv = graph.closed_degree(v);
      const double score = measure == Measure::kCosine
                               ? CosineFromCounts(counts[p], cu, cv)
                               : JaccardFromCounts(counts[p], cu, cv);
      table.scores[p] = score;
      table.scores[graph.twin({p}).position] = score;
    }
  }
  return table;
}

}  // namespace parscan

#endif  // PARSCAN_SIMILARITY_H_
