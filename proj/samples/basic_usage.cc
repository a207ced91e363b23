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

// Loads an edge list, builds a cosine index, and prints the clustering for a
// few parameter settings.
//
//   basic_usage graph.edges

#include <fstream>
#include <iostream>

#include "parscan/parscan.h"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " EDGE_LIST\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << '\n';
    return 1;
  }
  const parscan::Graph graph = parscan::LoadEdgeList(in, /*weighted=*/false);
  const parscan::ScanIndex index =
      parscan::BuildScanIndex(graph, parscan::Measure::kCosine, std::nullopt);
  std::cout << "n=" << graph.num_vertices() << " m=" << graph.num_edges()
            << '\n';

  for (const parscan::QueryParams params :
       {parscan::QueryParams{2, 0.75}, parscan::QueryParams{3, 0.6}}) {
    const parscan::Clustering clustering = parscan::Cluster(index, params);
    const parscan::Labels labels =
        parscan::LabelHubsOutliers(graph, clustering);
    std::cout << "mu=" << params.mu << " epsilon=" << params.epsilon
              << " clusters=" << clustering.num_clusters
              << " modularity=" << parscan::Modularity(graph, clustering)
              << '\n';
    parscan::WriteClustering(clustering, labels, params, std::cout);
  }
  return 0;
}
