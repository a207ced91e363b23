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

// End-to-end index construction with per-phase timings.

#ifndef PARSCAN_PIPELINE_H_
#define PARSCAN_PIPELINE_H_

#include <chrono>
#include <optional>
#include <utility>

#include "parscan/graph.h"
#include "parscan/index.h"
#include "parscan/similarity.h"
#include "parscan/sketch.h"

namespace parscan {

struct BuildTimings {
  double similarity_seconds = 0.0;
  double neighbor_order_seconds = 0.0;
  double core_order_seconds = 0.0;
};

// Similarities for `measure` (exact, or hybrid when `approx` is set), then
// the neighbor and core orders.
inline ScanIndex BuildScanIndex(const Graph& graph, Measure measure,
                                const std::optional<ApproxConfig>& approx,
                                BuildTimings* timings = nullptr) {
  using Clock = std::chrono::steady_clock;
  auto seconds_since = [](Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  BuildTimings local;
  auto start = Clock::now();
  SimilarityTable table = approx
                              ? ComputeSimilaritiesHybrid(graph, *approx, measure)
                              : ComputeSimilarities(graph, measure);
  local.similarity_seconds = seconds_since(start);

  ScanIndex index;
  index.num_vertices = graph.num_vertices();
  index.num_edges = graph.num_edges();
  index.measure = table.measure;
  index.config_digest = ConfigDigest(measure, approx);
  start = Clock::now();
  index.neighbor_order = BuildNeighborOrder(graph, table);
  local.neighbor_order_seconds = seconds_since(start);
  start = Clock::now();
  index.core_order = BuildCoreOrder(index.neighbor_order);
  local.core_order_seconds = seconds_since(start);
  index.similarities = std::move(table);
  if (timings != nullptr) *timings = local;
  return index;
}

}  // namespace parscan

#endif  // PARSCAN_PIPELINE_H_
