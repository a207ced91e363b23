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

// Immutable undirected simple graph in compressed adjacency form, the
// edge-list text loader/writer, and the degree-oriented directed view used by
// triangle-based similarity computation.

#ifndef PARSCAN_GRAPH_H_
#define PARSCAN_GRAPH_H_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "parscan/base.h"

namespace parscan {

struct WeightedEdge {
  VertexId u;
  VertexId v;
  double weight = 1.0;
};

// Identifies the directed copy (u -> v) of an undirected edge by its position
// in the flat neighbor array.
struct HalfEdgeId {
  EdgeIndex position = 0;

  friend bool operator==(HalfEdgeId, HalfEdgeId) = default;
  friend auto operator<=>(HalfEdgeId, HalfEdgeId) = default;
};

class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Builds a graph from undirected edges, each listed once in either
  // direction. Rejects self-loops, duplicate edges, non-positive weights and
  // endpoints >= num_vertices.
  static Graph FromEdges(std::size_t num_vertices,
                         std::span<const WeightedEdge> edges, bool weighted) {
    Graph g;
    g.weighted_ = weighted;
    std::vector<std::size_t> degree(num_vertices, 0);
    for (const WeightedEdge& e : edges) {
      if (e.u >= num_vertices || e.v >= num_vertices) {
        throw Error(ErrorCode::kInvalidArgument,
                    "edge endpoint out of range: " + std::to_string(e.u) +
                        " " + std::to_string(e.v));
      }
      if (e.u == e.v) {
        throw Error(ErrorCode::kInvalidArgument,
                    "self-loop on vertex " + std::to_string(e.u));
      }
      if (weighted && !(e.weight > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "edge weight must be positive: " + std::to_string(e.u) +
                        " " + std::to_string(e.v));
      }
      ++degree[e.u];
      ++degree[e.v];
    }
    g.offsets_.assign(num_vertices + 1, 0);
    for (std::size_t v = 0; v < num_vertices; ++v) {
      g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    }
    const EdgeIndex half_edges = g.offsets_[num_vertices];
    std::vector<std::pair<VertexId, double>> slots(half_edges);
    std::vector<EdgeIndex> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const WeightedEdge& e : edges) {
      const double w = weighted ? e.weight : 1.0;
      slots[cursor[e.u]++] = {e.v, w};
      slots[cursor[e.v]++] = {e.u, w};
    }
    g.neighbors_.resize(half_edges);
    g.weights_.resize(half_edges);
    for (std::size_t v = 0; v < num_vertices; ++v) {
      auto first = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto last =
          slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      std::sort(first, last, [](const auto& a, const auto& b) {
        return a.first < b.first;
      });
      for (auto it = first; it != last; ++it) {
        if (it != first && (it - 1)->first == it->first) {
          throw Error(ErrorCode::kInvalidArgument,
                      "duplicate edge " + std::to_string(v) + " " +
                          std::to_string(it->first));
        }
        const auto pos = static_cast<EdgeIndex>(it - slots.begin());
        g.neighbors_[pos] = it->first;
        g.weights_[pos] = it->second;
      }
    }
    g.BuildTwins();
    return g;
  }

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }
  std::size_t num_half_edges() const { return neighbors_.size(); }
  bool weighted() const { return weighted_; }

  std::size_t degree(VertexId v) const {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }
  // |N̄(v)| = deg(v) + 1.
  std::size_t closed_degree(VertexId v) const { return degree(v) + 1; }

  EdgeIndex begin_offset(VertexId v) const { return offsets_[v]; }
  EdgeIndex end_offset(VertexId v) const { return offsets_[v + 1]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }
  std::span<const double> weights(VertexId v) const {
    return {weights_.data() + offsets_[v], degree(v)};
  }

  VertexId target(HalfEdgeId e) const { return neighbors_[e.position]; }
  double weight(HalfEdgeId e) const { return weights_[e.position]; }

  // Endpoint owning the half-edge, found by binary search over offsets.
  VertexId source(HalfEdgeId e) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), e.position);
    return static_cast<VertexId>(it - offsets_.begin() - 1);
  }

  HalfEdgeId twin(HalfEdgeId e) const { return {twins_[e.position]}; }

  // Position of (u -> v), or num_half_edges() if the edge is absent.
  EdgeIndex find(VertexId u, VertexId v) const {
    auto nbrs = neighbors(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v) return num_half_edges();
    return offsets_[u] + static_cast<EdgeIndex>(it - nbrs.begin());
  }

  // w(u, v), with the convention w(v, v) = 1 and 0 for non-adjacent pairs.
  double edge_weight(VertexId u, VertexId v) const {
    if (u == v) return 1.0;
    const EdgeIndex pos = find(u, v);
    return pos == num_half_edges() ? 0.0 : weights_[pos];
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < num_vertices(); ++v) {
      best = std::max(best, degree(static_cast<VertexId>(v)));
    }
    return best;
  }

  std::span<const EdgeIndex> offsets() const { return offsets_; }
  std::span<const VertexId> flat_neighbors() const { return neighbors_; }
  std::span<const double> flat_weights() const { return weights_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.weighted_ == b.weighted_ && a.offsets_ == b.offsets_ &&
           a.neighbors_ == b.neighbors_ && a.weights_ == b.weights_;
  }

 private:
  void BuildTwins() {
    twins_.resize(neighbors_.size());
    for (std::size_t u = 0; u < num_vertices(); ++u) {
      for (EdgeIndex p = offsets_[u]; p < offsets_[u + 1]; ++p) {
        const VertexId v = neighbors_[p];
        if (static_cast<VertexId>(u) < v) {
          const EdgeIndex q = find(v, static_cast<VertexId>(u));
          twins_[p] = q;
          twins_[q] = p;
        }
      }
    }
  }

  std::vector<EdgeIndex> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<double> weights_;
  std::vector<EdgeIndex> twins_;
  bool weighted_ = false;
};

inline HalfEdgeId Twin(HalfEdgeId e, const Graph& graph) {
  return graph.twin(e);
}

struct LoadStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

namespace internal {

inline std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == '\n')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '\n') {
      ++j;
    }
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace internal

// Reads "u v" / "u v w" lines. '#' starts a comment line; the directive
// "# vertices N" reserves ids 0..N-1 so trailing isolated vertices survive a
// write/load round trip. In weighted mode every edge line needs a weight; in
// unweighted mode a third column is validated and ignored.
inline Graph LoadEdgeList(std::istream& in, bool weighted,
                          LoadStats* stats = nullptr) {
  LoadStats local;
  std::vector<WeightedEdge> edges;
  std::vector<std::pair<std::uint64_t, std::size_t>> keys;
  std::size_t num_vertices = 0;
  std::string line;
  std::size_t line_number = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_number) +
                                       ": " + why + ": '" + line + "'");
  };
  while (std::getline(in, line)) {
    ++line_number;
    auto tokens = internal::SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      if (tokens.size() == 3 && tokens[0] == "#" && tokens[1] == "vertices") {
        std::size_t n = 0;
        if (!internal::ParseNumber(tokens[2], n)) fail("bad vertex count");
        num_vertices = std::max(num_vertices, n);
      }
      continue;
    }
    ++local.lines;
    if (tokens.size() < 2 || tokens.size() > 3) fail("expected 'u v [w]'");
    if (weighted && tokens.size() != 3) fail("weighted edge without weight");
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!internal::ParseNumber(tokens[0], u) ||
        !internal::ParseNumber(tokens[1], v)) {
      fail("vertex ids must be non-negative integers");
    }
    if (u >= kInvalidVertex || v >= kInvalidVertex) fail("vertex id too large");
    double w = 1.0;
    if (tokens.size() == 3) {
      double parsed = 0.0;
      if (!internal::ParseNumber(tokens[2], parsed)) fail("bad weight");
      if (weighted) {
        if (!(parsed > 0.0)) fail("edge weight must be positive");
        w = parsed;
      }
    }
    num_vertices = std::max<std::size_t>(num_vertices, std::max(u, v) + 1);
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    const std::uint64_t lo = std::min(u, v);
    const std::uint64_t hi = std::max(u, v);
    keys.emplace_back((lo << 32) | hi, edges.size());
    edges.push_back({static_cast<VertexId>(lo), static_cast<VertexId>(hi), w});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading edge list");

  // Keep the first occurrence of each undirected edge.
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  std::vector<char> keep(edges.size(), 1);
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i].first != keys[i - 1].first) continue;
    std::size_t first = i - 1;
    while (first > 0 && keys[first - 1].first == keys[i].first) --first;
    const WeightedEdge& original = edges[keys[first].second];
    const WeightedEdge& repeat = edges[keys[i].second];
    if (weighted && original.weight != repeat.weight) {
      throw Error(ErrorCode::kParse,
                  "duplicate edge " + std::to_string(repeat.u) + " " +
                      std::to_string(repeat.v) + " with conflicting weight");
    }
    keep[keys[i].second] = 0;
    ++local.duplicates_dropped;
  }
  std::vector<WeightedEdge> unique;
  unique.reserve(edges.size() - local.duplicates_dropped);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (keep[i]) unique.push_back(edges[i]);
  }
  if (stats != nullptr) *stats = local;
  return Graph::FromEdges(num_vertices, unique, weighted);
}

inline Graph ParseEdgeList(std::string_view text, bool weighted,
                           LoadStats* stats = nullptr) {
  std::istringstream in{std::string(text)};
  return LoadEdgeList(in, weighted, stats);
}

// Writes each undirected edge once as "u v" (or "u v w" for weighted graphs)
// with u < v, preceded by a "# vertices N" directive. Weights use the
// shortest round-trip decimal form.
inline void WriteEdgeList(const Graph& graph, std::ostream& out) {
  out << "# vertices " << graph.num_vertices() << '\n';
  char buffer[64];
  for (std::size_t u = 0; u < graph.num_vertices(); ++u) {
    const auto uid = static_cast<VertexId>(u);
    auto nbrs = graph.neighbors(uid);
    auto wts = graph.weights(uid);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] < uid) continue;
      out << u << ' ' << nbrs[i];
      if (graph.weighted()) {
        auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), wts[i]);
        out << ' ' << std::string_view(buffer, ptr - buffer);
      }
      out << '\n';
    }
  }
}

// Degree-oriented directed view: every undirected edge appears once, directed
// from the endpoint with smaller (degree, id) to the larger one. Out-lists
// keep ascending id order.
struct OrientedGraph {
  std::vector<EdgeIndex> offsets;
  std::vector<VertexId> targets;
  // Position in the undirected graph of the half-edge (source -> target).
  std::vector<EdgeIndex> half_edges;

  std::size_t num_vertices() const { return offsets.size() - 1; }
  std::size_t num_edges() const { return targets.size(); }
  std::span<const VertexId> out(VertexId v) const {
    return {targets.data() + offsets[v],
            static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
  }
};

inline bool PrecedesInDegreeOrder(const Graph& graph, VertexId a, VertexId b) {
  const std::size_t da = graph.degree(a);
  const std::size_t db = graph.degree(b);
  return da < db || (da == db && a < b);
}

inline OrientedGraph DegreeOrientedView(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  OrientedGraph view;
  view.offsets.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const auto uid = static_cast<VertexId>(u);
    std::size_t count = 0;
    for (VertexId v : graph.neighbors(uid)) {
      if (PrecedesInDegreeOrder(graph, uid, v)) ++count;
    }
    view.offsets[u + 1] = view.offsets[u] + count;
  }
  view.targets.resize(view.offsets[n]);
  view.half_edges.resize(view.offsets[n]);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t u = 0; u < n; ++u) {
    const auto uid = static_cast<VertexId>(u);
    EdgeIndex cursor = view.offsets[u];
    for (EdgeIndex p = graph.begin_offset(uid); p < graph.end_offset(uid);
         ++p) {
      const VertexId v = graph.target({p});
      if (PrecedesInDegreeOrder(graph, uid, v)) {
        view.targets[cursor] = v;
        view.half_edges[cursor] = p;
        ++cursor;
      }
    }
  }
  return view;
}

}  // namespace parscan

#endif  // PARSCAN_GRAPH_H_
