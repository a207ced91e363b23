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

// Locality-sensitive sketches of closed neighborhoods and the hybrid
// exact/approximate similarity table.
//
// All randomness is counter based: the value used for (seed, sample, element)
// is a pure function of those three numbers, so sketches are identical no
// matter which thread computes them and neighboring vertices see the same
// random coordinates.

#ifndef PARSCAN_SKETCH_H_
#define PARSCAN_SKETCH_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"
#include "parscan/similarity.h"

namespace parscan {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t CounterHash(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t counter) {
  return Mix64(Mix64(seed ^ 0x9e3779b97f4a7c15ULL) +
               Mix64(stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL) +
               counter);
}

// Uniform in (0, 1), never 0 so the logarithm in Box-Muller stays finite.
constexpr double ToOpenUnit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal coordinate r_sample[element] via Box-Muller.
inline double GaussianCoordinate(std::uint64_t seed, std::uint32_t sample,
                                 VertexId element) {
  const std::uint64_t stream = (static_cast<std::uint64_t>(sample) << 1);
  const double u1 = ToOpenUnit(CounterHash(seed, stream, element));
  const double u2 = ToOpenUnit(CounterHash(seed, stream | 1, element));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

enum class SketchScheme : std::uint8_t {
  kSimHash = 0,
  kMinHashStandard = 1,
  kMinHashKPartition = 2,
};

inline std::string_view SketchSchemeName(SketchScheme s) {
  switch (s) {
    case SketchScheme::kSimHash:
      return "simhash";
    case SketchScheme::kMinHashStandard:
      return "minhash-standard";
    case SketchScheme::kMinHashKPartition:
      return "minhash-kpartition";
  }
  return "unknown";
}

inline std::optional<SketchScheme> ParseSketchScheme(std::string_view name) {
  for (auto s : {SketchScheme::kSimHash, SketchScheme::kMinHashStandard,
                 SketchScheme::kMinHashKPartition}) {
    if (SketchSchemeName(s) == name) return s;
  }
  return std::nullopt;
}

struct ApproxConfig {
  SketchScheme scheme = SketchScheme::kSimHash;
  std::uint32_t samples = 0;
  std::uint64_t seed = 0;
  // Edges are sketched only when both endpoint degrees exceed this. Defaults
  // to k for SimHash and 3k/2 for MinHash.
  std::optional<double> heuristic_threshold;

  double EffectiveThreshold() const {
    if (heuristic_threshold) return *heuristic_threshold;
    return scheme == SketchScheme::kSimHash ? samples : 1.5 * samples;
  }

  void Validate() const {
    if (samples < 1) {
      throw Error(ErrorCode::kInvalidArgument, "sample count k must be >= 1");
    }
  }
};

// ---------------------------------------------------------------------------
// SimHash

struct SimHashSketch {
  std::uint32_t samples = 0;
  std::vector<std::uint64_t> words;

  bool bit(std::uint32_t i) const { return (words[i >> 6] >> (i & 63)) & 1U; }

  friend bool operator==(const SimHashSketch&, const SimHashSketch&) = default;
};

// Sketches the sparse vector with the given support (ascending ids) and
// coordinate values: bit i = [<vec, r_i> >= 0].
inline SimHashSketch SimHashVector(std::span<const VertexId> support,
                                   std::span<const double> values,
                                   std::uint32_t samples, std::uint64_t seed) {
  std::vector<double> projection(samples, 0.0);
  for (std::size_t j = 0; j < support.size(); ++j) {
    const double value = values[j];
    for (std::uint32_t i = 0; i < samples; ++i) {
      projection[i] += value * GaussianCoordinate(seed, i, support[j]);
    }
  }
  SimHashSketch sketch;
  sketch.samples = samples;
  sketch.words.assign((samples + 63) / 64, 0);
  for (std::uint32_t i = 0; i < samples; ++i) {
    if (projection[i] >= 0.0) sketch.words[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return sketch;
}

namespace internal {

// Closed neighborhood of v in ascending id order with w(v, v) = 1.
inline void ClosedNeighborhood(const Graph& graph, VertexId v, bool use_weights,
                               std::vector<VertexId>& ids,
                               std::vector<double>& values) {
  ids.clear();
  values.clear();
  auto nbrs = graph.neighbors(v);
  auto wts = graph.weights(v);
  bool self_done = false;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (!self_done && v < nbrs[i]) {
      ids.push_back(v);
      values.push_back(1.0);
      self_done = true;
    }
    ids.push_back(nbrs[i]);
    values.push_back(use_weights ? wts[i] : 1.0);
  }
  if (!self_done) {
    ids.push_back(v);
    values.push_back(1.0);
  }
}

}  // namespace internal

inline SimHashSketch SimHashVertex(const Graph& graph, VertexId v,
                                   bool use_weights, std::uint32_t samples,
                                   std::uint64_t seed) {
  std::vector<VertexId> ids;
  std::vector<double> values;
  internal::ClosedNeighborhood(graph, v, use_weights, ids, values);
  return SimHashVector(ids, values, samples, seed);
}

// Sketches every vertex selected by `mask` (all vertices when empty). Weights
// are used when the graph is weighted.
inline std::vector<SimHashSketch> SimHashSketchAll(
    const Graph& graph, const ApproxConfig& config,
    std::span<const char> mask = {}) {
  config.Validate();
  if (config.scheme != SketchScheme::kSimHash) {
    throw Error(ErrorCode::kInvalidArgument, "config scheme is not simhash");
  }
  const std::size_t n = graph.num_vertices();
  std::vector<SimHashSketch> sketches(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t v = 0; v < n; ++v) {
    if (!mask.empty() && !mask[v]) continue;
    sketches[v] = SimHashVertex(graph, static_cast<VertexId>(v),
                                graph.weighted(), config.samples, config.seed);
  }
  return sketches;
}

// max(0, cos(pi * d / k)) where d is the Hamming distance.
inline double SimHashSimilarity(const SimHashSketch& a,
                                const SimHashSketch& b) {
  if (a.samples != b.samples) {
    throw Error(ErrorCode::kInvalidArgument, "simhash sketch sizes differ");
  }
  std::uint64_t differing = 0;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    differing += static_cast<std::uint64_t>(std::popcount(a.words[i] ^ b.words[i]));
  }
  const double estimate = std::cos(std::numbers::pi *
                                   static_cast<double>(differing) /
                                   static_cast<double>(a.samples));
  return std::clamp(estimate, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// MinHash

enum class MinHashVariant : std::uint8_t { kStandard, kKPartition };

struct MinHashSketch {
  MinHashVariant variant = MinHashVariant::kStandard;
  std::vector<std::uint64_t> values;
  // k-partition only: entry was copied from another bucket.
  std::vector<char> densified;

  std::size_t size() const { return values.size(); }

  friend bool operator==(const MinHashSketch&, const MinHashSketch&) = default;
};

// Permutation of the element universe for sample i; injective in x.
inline std::uint64_t MinHashPermutation(std::uint64_t seed,
                                        std::uint32_t sample, VertexId x) {
  const std::uint64_t key = CounterHash(seed, 0xa5a5a5a5ULL + sample, 0);
  return Mix64(static_cast<std::uint64_t>(x) ^ key);
}

inline MinHashSketch MinHashStandardSet(std::span<const VertexId> set,
                                        std::uint32_t samples,
                                        std::uint64_t seed) {
  MinHashSketch sketch;
  sketch.variant = MinHashVariant::kStandard;
  sketch.values.assign(samples, std::numeric_limits<std::uint64_t>::max());
  for (std::uint32_t i = 0; i < samples; ++i) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (VertexId x : set) best = std::min(best, MinHashPermutation(seed, i, x));
    sketch.values[i] = best;
  }
  return sketch;
}

// One-permutation hashing: bucket j holds the smallest hash landing in it;
// empty buckets borrow from the next non-empty bucket to the right
// (circularly) and are flagged as densified.
inline MinHashSketch MinHashKPartitionSet(std::span<const VertexId> set,
                                          std::uint32_t samples,
                                          std::uint64_t seed) {
  constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();
  MinHashSketch sketch;
  sketch.variant = MinHashVariant::kKPartition;
  sketch.values.assign(samples, kEmpty);
  sketch.densified.assign(samples, 0);
  std::vector<char> filled(samples, 0);
  for (VertexId x : set) {
    const std::uint64_t h = MinHashPermutation(seed, 0, x);
    const auto bucket =
        static_cast<std::uint32_t>(((h >> 32) * samples) >> 32);
    filled[bucket] = 1;
    sketch.values[bucket] = std::min(sketch.values[bucket], h);
  }
  if (set.empty()) return sketch;
  for (std::uint32_t j = 0; j < samples; ++j) {
    if (filled[j]) continue;
    std::uint32_t source = (j + 1) % samples;
    while (!filled[source]) source = (source + 1) % samples;
    sketch.values[j] = sketch.values[source];
    sketch.densified[j] = 1;
  }
  return sketch;
}

inline MinHashSketch MinHashVertex(const Graph& graph, VertexId v,
                                   MinHashVariant variant,
                                   std::uint32_t samples, std::uint64_t seed) {
  std::vector<VertexId> ids;
  std::vector<double> unused;
  internal::ClosedNeighborhood(graph, v, false, ids, unused);
  return variant == MinHashVariant::kStandard
             ? MinHashStandardSet(ids, samples, seed)
             : MinHashKPartitionSet(ids, samples, seed);
}

inline std::vector<MinHashSketch> MinHashSketchAll(
    const Graph& graph, const ApproxConfig& config,
    std::span<const char> mask = {}) {
  config.Validate();
  if (config.scheme == SketchScheme::kSimHash) {
    throw Error(ErrorCode::kInvalidArgument, "config scheme is not minhash");
  }
  if (graph.weighted()) {
    throw Error(ErrorCode::kUnsupported,
                "minhash does not support weighted graphs");
  }
  const MinHashVariant variant = config.scheme == SketchScheme::kMinHashStandard
                                     ? MinHashVariant::kStandard
                                     : MinHashVariant::kKPartition;
  const std::size_t n = graph.num_vertices();
  std::vector<MinHashSketch> sketches(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t v = 0; v < n; ++v) {
    if (!mask.empty() && !mask[v]) continue;
    sketches[v] = MinHashVertex(graph, static_cast<VertexId>(v), variant,
                                config.samples, config.seed);
  }
  return sketches;
}

// Fraction of matching coordinates. Pairs where both entries are densified
// copies are left out of numerator and denominator.
inline double MinHashSimilarity(const MinHashSketch& a,
                                const MinHashSketch& b) {
  if (a.variant != b.variant) {
    throw Error(ErrorCode::kInvalidArgument, "minhash variants differ");
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "minhash sketch sizes differ");
  }
  std::size_t matches = 0;
  std::size_t counted = 0;
  const bool partitioned = a.variant == MinHashVariant::kKPartition;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (partitioned && a.densified[i] && b.densified[i]) continue;
    ++counted;
    if (a.values[i] == b.values[i]) ++matches;
  }
  if (counted == 0) return 0.0;
  return static_cast<double>(matches) / static_cast<double>(counted);
}

// ---------------------------------------------------------------------------
// Sample-count bounds and the hybrid table

// Smallest k that meets the classification guarantee for threshold slack
// delta: pi^2 ln(nm) / (2 delta^2) for SimHash, ln(nm) / (2 delta^2) for
// MinHash.
inline std::uint64_t RequiredSamples(double n, double m, double delta,
                                     SketchScheme scheme) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  if (!(n > 0.0 && m > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "n and m must be positive");
  }
  const double log_nm = std::log(n) + std::log(m);
  double bound = log_nm / (2.0 * delta * delta);
  if (scheme == SketchScheme::kSimHash) {
    bound *= std::numbers::pi * std::numbers::pi;
  }
  // Absorb round-off so bounds that are integers in exact arithmetic do not
  // ceil one higher.
  bound *= 1.0 - 1e-12;
  return static_cast<std::uint64_t>(std::ceil(std::max(bound, 1.0)));
}

// |N(u) ∩ N(v)| by a sorted merge, switching to binary search from the
// shorter list when the lengths are very unbalanced.
inline std::size_t CountSharedNeighbors(std::span<const VertexId> a,
                                        std::span<const VertexId> b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::size_t shared = 0;
  if (a.size() * 16 < b.size()) {
    for (VertexId x : a) {
      if (std::binary_search(b.begin(), b.end(), x)) ++shared;
    }
    return shared;
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

// Approximate scores for edges whose endpoints both exceed the degree
// threshold; exact scores (same arithmetic as ComputeSimilarities) for the
// rest. Only high-degree vertices with a high-degree neighbor are sketched.
inline SimilarityTable ComputeSimilaritiesHybrid(const Graph& graph,
                                                 const ApproxConfig& config,
                                                 Measure exact_measure) {
  config.Validate();
  const bool simhash = config.scheme == SketchScheme::kSimHash;
  if (simhash && exact_measure != Measure::kCosine &&
      exact_measure != Measure::kWeightedCosine) {
    throw Error(ErrorCode::kInvalidArgument,
                "simhash approximates cosine or weighted-cosine");
  }
  if (!simhash && exact_measure != Measure::kJaccard) {
    throw Error(ErrorCode::kInvalidArgument, "minhash approximates jaccard");
  }
  if (!simhash && graph.weighted()) {
    throw Error(ErrorCode::kUnsupported,
                "minhash does not support weighted graphs");
  }
  if (exact_measure == Measure::kWeightedCosine && !graph.weighted()) {
    throw Error(ErrorCode::kInvalidArgument,
                "weighted-cosine requires a weighted graph");
  }
  const bool use_weights = exact_measure == Measure::kWeightedCosine;

  const std::size_t n = graph.num_vertices();
  const double threshold = config.EffectiveThreshold();
  std::vector<char> high(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    high[v] = static_cast<double>(graph.degree(static_cast<VertexId>(v))) >
              threshold;
  }
  std::vector<char> sketched(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!high[v]) continue;
    for (VertexId u : graph.neighbors(static_cast<VertexId>(v))) {
      if (high[u]) {
        sketched[v] = 1;
        break;
      }
    }
  }

  std::vector<SimHashSketch> sim_sketches;
  std::vector<MinHashSketch> min_sketches;
  if (simhash) {
    sim_sketches.resize(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t v = 0; v < n; ++v) {
      if (!sketched[v]) continue;
      sim_sketches[v] = SimHashVertex(graph, static_cast<VertexId>(v),
                                      use_weights, config.samples, config.seed);
    }
  } else {
    min_sketches = MinHashSketchAll(graph, config, sketched);
  }

  std::vector<double> norms;
  if (use_weights) norms = ComputeVertexNorms(graph);

  SimilarityTable table;
  table.measure = simhash ? Measure::kApproxCosine : Measure::kApproxJaccard;
  table.scores.assign(graph.num_half_edges(), 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t u = 0; u < n; ++u) {
    const auto uid = static_cast<VertexId>(u);
    for (EdgeIndex p = graph.begin_offset(uid); p < graph.end_offset(uid);
         ++p) {
      const VertexId v = graph.target({p});
      if (v < uid) continue;
      double score = 0.0;
      if (high[uid] && high[v]) {
        score = simhash ? SimHashSimilarity(sim_sketches[uid], sim_sketches[v])
                        : MinHashSimilarity(min_sketches[uid], min_sketches[v]);
      } else if (use_weights) {
        score = SharedNeighborDot(graph, uid, v, graph.weight({p})) /
                (norms[uid] * norms[v]);
      } else {
        const std::size_t shared =
            CountSharedNeighbors(graph.neighbors(uid), graph.neighbors(v));
        const std::size_t cu = graph.closed_degree(uid);
        const std::size_t cv = graph.closed_degree(v);
        score = exact_measure == Measure::kJaccard
                    ? JaccardFromCounts(shared, cu, cv)
                    : CosineFromCounts(shared, cu, cv);
      }
      table.scores[p] = score;
      table.scores[graph.twin({p}).position] = score;
    }
  }
  return table;
}

}  // namespace parscan

#endif  // PARSCAN_SKETCH_H_
