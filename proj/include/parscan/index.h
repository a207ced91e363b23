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

// The clustering index: neighbor order (each closed neighborhood sorted by
// non-increasing similarity) and core order (for every mu, the candidate
// cores sorted by non-increasing core threshold).

#ifndef PARSCAN_INDEX_H_
#define PARSCAN_INDEX_H_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"
#include "parscan/similarity.h"
#include "parscan/sketch.h"

namespace parscan {

// NO[v] lists N̄(v): v itself first (similarity 1), then its neighbors by
// (-similarity, id). Position mu in the 1-based convention is index mu - 1.
struct NeighborOrder {
  std::vector<EdgeIndex> offsets;
  std::vector<VertexId> vertices;
  std::vector<double> similarities;

  std::size_t num_vertices() const {
    return offsets.empty() ? 0 : offsets.size() - 1;
  }
  std::size_t size(VertexId v) const {
    return static_cast<std::size_t>(offsets[v + 1] - offsets[v]);
  }
  std::span<const VertexId> order(VertexId v) const {
    return {vertices.data() + offsets[v], size(v)};
  }
  std::span<const double> scores(VertexId v) const {
    return {similarities.data() + offsets[v], size(v)};
  }

  friend bool operator==(const NeighborOrder&, const NeighborOrder&) = default;
};

// CO[mu] for mu in [2, max_mu], stored in one arena. Entry mu - 2 of
// `offsets` starts CO[mu].
struct CoreOrder {
  std::uint64_t max_mu = 1;
  std::vector<EdgeIndex> offsets;
  std::vector<VertexId> vertices;
  std::vector<double> thresholds;

  bool has(std::uint64_t mu) const { return mu >= 2 && mu <= max_mu; }
  std::span<const VertexId> candidates(std::uint64_t mu) const {
    if (!has(mu)) return {};
    const EdgeIndex begin = offsets[mu - 2];
    return {vertices.data() + begin,
            static_cast<std::size_t>(offsets[mu - 1] - begin)};
  }
  std::span<const double> core_thresholds(std::uint64_t mu) const {
    if (!has(mu)) return {};
    const EdgeIndex begin = offsets[mu - 2];
    return {thresholds.data() + begin,
            static_cast<std::size_t>(offsets[mu - 1] - begin)};
  }

  friend bool operator==(const CoreOrder&, const CoreOrder&) = default;
};

struct ScanIndex {
  std::uint64_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  Measure measure = Measure::kCosine;
  std::uint64_t config_digest = 0;
  NeighborOrder neighbor_order;
  CoreOrder core_order;
  SimilarityTable similarities;

  // t_mu(v) = sigma(v, NO[v][mu]); requires mu <= |N̄(v)|.
  double CoreThreshold(VertexId v, std::uint64_t mu) const {
    return neighbor_order.similarities[neighbor_order.offsets[v] + mu - 1];
  }

  friend bool operator==(const ScanIndex&, const ScanIndex&) = default;
};

// FNV-1a digest of the similarity configuration used to build an index.
inline std::uint64_t ConfigDigest(Measure measure,
                                  const std::optional<ApproxConfig>& approx) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint64_t>(measure));
  if (approx) {
    feed(1 + static_cast<std::uint64_t>(approx->scheme));
    feed(approx->samples);
    feed(approx->seed);
    feed(std::bit_cast<std::uint64_t>(approx->EffectiveThreshold()));
  } else {
    feed(0);
  }
  return h;
}

inline NeighborOrder BuildNeighborOrder(const Graph& graph,
                                        const SimilarityTable& table) {
  const std::size_t n = graph.num_vertices();
  NeighborOrder no;
  no.offsets.resize(n + 1);
  for (std::size_t v = 0; v <= n; ++v) {
    no.offsets[v] = graph.offsets()[v] + v;
  }
  no.vertices.resize(no.offsets[n]);
  no.similarities.resize(no.offsets[n]);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t v = 0; v < n; ++v) {
    const auto vid = static_cast<VertexId>(v);
    const EdgeIndex base = no.offsets[v];
    std::vector<std::pair<double, VertexId>> entries;
    entries.reserve(graph.degree(vid));
    for (EdgeIndex p = graph.begin_offset(vid); p < graph.end_offset(vid);
         ++p) {
      entries.emplace_back(table.scores[p], graph.target({p}));
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    no.vertices[base] = vid;
    no.similarities[base] = 1.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      no.similarities[base + 1 + i] = entries[i].first;
      no.vertices[base + 1 + i] = entries[i].second;
    }
  }
  return no;
}

inline CoreOrder BuildCoreOrder(const NeighborOrder& no) {
  const std::size_t n = no.num_vertices();
  CoreOrder co;
  std::uint64_t max_mu = 1;
  for (std::size_t v = 0; v < n; ++v) {
    max_mu = std::max<std::uint64_t>(max_mu, no.size(static_cast<VertexId>(v)));
  }
  co.max_mu = max_mu;
  // Bucket vertices by |N̄(v)|; CO[mu] = vertices with |N̄(v)| >= mu.
  std::vector<EdgeIndex> with_size(max_mu + 2, 0);
  for (std::size_t v = 0; v < n; ++v) ++with_size[no.size(static_cast<VertexId>(v))];
  std::vector<EdgeIndex> at_least(max_mu + 2, 0);
  for (std::uint64_t s = max_mu + 1; s-- > 0;) {
    at_least[s] = at_least[s + 1] + with_size[s];
  }
  co.offsets.assign(max_mu, 0);
  for (std::uint64_t mu = 2; mu <= max_mu; ++mu) {
    co.offsets[mu - 1] = co.offsets[mu - 2] + at_least[mu];
  }
  const EdgeIndex total = co.offsets[max_mu - 1];
  co.vertices.resize(total);
  co.thresholds.resize(total);
  std::vector<EdgeIndex> cursor(co.offsets.begin(), co.offsets.end());
  for (std::size_t v = 0; v < n; ++v) {
    const auto vid = static_cast<VertexId>(v);
    auto scores = no.scores(vid);
    for (std::uint64_t mu = 2; mu <= scores.size(); ++mu) {
      const EdgeIndex slot = cursor[mu - 2]++;
      co.vertices[slot] = vid;
      co.thresholds[slot] = scores[mu - 1];
    }
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint64_t mu = 2; mu <= max_mu; ++mu) {
    const EdgeIndex begin = co.offsets[mu - 2];
    const EdgeIndex end = co.offsets[mu - 1];
    std::vector<std::pair<double, VertexId>> entries;
    entries.reserve(end - begin);
    for (EdgeIndex i = begin; i < end; ++i) {
      entries.emplace_back(co.thresholds[i], co.vertices[i]);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    for (EdgeIndex i = begin; i < end; ++i) {
      co.thresholds[i] = entries[i - begin].first;
      co.vertices[i] = entries[i - begin].second;
    }
  }
  return co;
}

inline ScanIndex BuildIndex(const Graph& graph, SimilarityTable table,
                            std::uint64_t config_digest = 0) {
  if (table.size() != graph.num_half_edges()) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity table has " + std::to_string(table.size()) +
                    " entries, graph has " +
                    std::to_string(graph.num_half_edges()) + " half-edges");
  }
  ScanIndex index;
  index.num_vertices = graph.num_vertices();
  index.num_edges = graph.num_edges();
  index.measure = table.measure;
  index.config_digest = config_digest;
  index.neighbor_order = BuildNeighborOrder(graph, table);
  index.core_order = BuildCoreOrder(index.neighbor_order);
  index.similarities = std::move(table);
  return index;
}

}  // namespace parscan

#endif  // PARSCAN_INDEX_H_
