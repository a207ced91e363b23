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

// Clustering quality: modularity, adjusted Rand index, and the parameter
// sweep that picks the best (mu, epsilon) under a metric. Unclustered
// vertices always count as singleton clusters.

#ifndef PARSCAN_QUALITY_H_
#define PARSCAN_QUALITY_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"
#include "parscan/index.h"
#include "parscan/query.h"

namespace parscan {

// Cluster index per vertex with unclustered vertices given fresh singleton
// ids after the real clusters.
inline std::vector<std::uint64_t> SingletonExpandedLabels(
    const Clustering& clustering) {
  std::vector<std::uint64_t> labels(clustering.size());
  std::uint64_t next = clustering.num_clusters;
  for (std::size_t v = 0; v < clustering.size(); ++v) {
    labels[v] = clustering.clustered(static_cast<VertexId>(v))
                    ? clustering.assignment[v]
                    : next++;
  }
  return labels;
}

// Sum over clusters of (internal weight / W) - (degree mass / 2W)^2, where W
// is the total edge weight. Algebraically the usual double sum over vertex
// pairs.
inline double Modularity(const Graph& graph, const Clustering& clustering) {
  if (graph.num_edges() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "modularity is undefined on a graph without edges");
  }
  if (clustering.size() != graph.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument,
                "clustering does not match graph size");
  }
  const std::vector<std::uint64_t> labels = SingletonExpandedLabels(clustering);
  std::uint64_t num_labels = clustering.num_clusters;
  for (std::uint64_t l : labels) num_labels = std::max(num_labels, l + 1);
  std::vector<double> internal(num_labels, 0.0);
  std::vector<double> mass(num_labels, 0.0);
  double total = 0.0;
  for (std::size_t u = 0; u < graph.num_vertices(); ++u) {
    const auto uid = static_cast<VertexId>(u);
    auto nbrs = graph.neighbors(uid);
    auto wts = graph.weights(uid);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      mass[labels[u]] += wts[i];
      if (nbrs[i] > uid) {
        total += wts[i];
        if (labels[nbrs[i]] == labels[u]) internal[labels[u]] += wts[i];
      }
    }
  }
  double q = 0.0;
  for (std::uint64_t c = 0; c < num_labels; ++c) {
    const double fraction = mass[c] / (2.0 * total);
    q += internal[c] / total - fraction * fraction;
  }
  return q;
}

struct ContingencyCounts {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells;
  std::vector<std::uint64_t> row_sums;
  std::vector<std::uint64_t> column_sums;
  std::uint64_t total = 0;
};

inline ContingencyCounts BuildContingency(const Clustering& proposed,
                                          const Clustering& truth) {
  if (proposed.size() != truth.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "clusterings cover different vertex sets");
  }
  const auto rows = SingletonExpandedLabels(proposed);
  const auto cols = SingletonExpandedLabels(truth);
  ContingencyCounts counts;
  counts.total = rows.size();
  for (std::size_t v = 0; v < rows.size(); ++v) {
    ++counts.cells[{rows[v], cols[v]}];
    if (rows[v] >= counts.row_sums.size()) counts.row_sums.resize(rows[v] + 1);
    if (cols[v] >= counts.column_sums.size()) {
      counts.column_sums.resize(cols[v] + 1);
    }
    ++counts.row_sums[rows[v]];
    ++counts.column_sums[cols[v]];
  }
  return counts;
}

inline long double Choose2(std::uint64_t k) {
  if (k < 2) return 0.0L;
  return static_cast<long double>(k) * static_cast<long double>(k - 1) / 2.0L;
}

// Hubert-Arabie adjusted Rand index. When the denominator vanishes (both
// partitions all-singletons, or both a single cluster) the result is 1 if the
// partitions are identical and 0 otherwise.
inline double AdjustedRandIndex(const Clustering& proposed,
                                const Clustering& truth) {
  const ContingencyCounts counts = BuildContingency(proposed, truth);
  long double index = 0.0L;
  for (const auto& [cell, count] : counts.cells) index += Choose2(count);
  long double rows = 0.0L;
  for (std::uint64_t s : counts.row_sums) rows += Choose2(s);
  long double cols = 0.0L;
  for (std::uint64_t s : counts.column_sums) cols += Choose2(s);
  const long double pairs = Choose2(counts.total);
  const long double expected = pairs == 0.0L ? 0.0L : rows * cols / pairs;
  const long double denominator = (rows + cols) / 2.0L - expected;
  if (denominator == 0.0L) {
    // Identical partitions make the contingency table a bijection.
    const bool identical = counts.cells.size() == counts.row_sums.size() &&
        counts.cells.size() == counts.column_sums.size();
    return identical ? 1.0 : 0.0;
  }
  return static_cast<double>((index - expected) / denominator);
}

// ---------------------------------------------------------------------------
// Parameter sweep

struct SweepRow {
  std::uint64_t mu;
  double epsilon;
  double score;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepRow best{0, 0.0, 0.0};
};

// {2, 4, 8, ..., 2^18}.
inline std::vector<std::uint64_t> DefaultMuGrid() {
  std::vector<std::uint64_t> mus;
  for (std::uint64_t mu = 2; mu <= (std::uint64_t{1} << 18); mu *= 2) {
    mus.push_back(mu);
  }
  return mus;
}

// {.01, .02, ..., .99}.
inline std::vector<double> DefaultEpsilonGrid() {
  std::vector<double> eps;
  for (int i = 1; i <= 99; ++i) eps.push_back(i / 100.0);
  return eps;
}

// Scores a deterministic-border clustering for every (mu, epsilon) pair.
// The best row breaks ties toward smaller mu, then smaller epsilon.
template <typename Metric>
SweepResult Sweep(const ScanIndex& index, std::span<const std::uint64_t> mus,
                  std::span<const double> epsilons, Metric&& metric) {
  SweepResult result;
  std::vector<std::pair<std::uint64_t, double>> grid;
  for (std::uint64_t mu : mus) {
    for (double eps : epsilons) grid.emplace_back(mu, eps);
  }
  std::sort(grid.begin(), grid.end());
  bool have_best = false;
  for (const auto& [mu, eps] : grid) {
    const Clustering clustering = Cluster(index, {mu, eps, true});
    const double score = metric(clustering);
    result.rows.push_back({mu, eps, score});
    if (!have_best || score > result.best.score) {
      result.best = result.rows.back();
      have_best = true;
    }
  }
  return result;
}

}  // namespace parscan

#endif  // PARSCAN_QUALITY_H_
