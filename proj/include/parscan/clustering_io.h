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

// Clustering text files:
//
//   # mu=<mu> epsilon=<epsilon> clusters=<C>
//   <id>\t<cluster-id | hub | outlier>
//
// one line per vertex. Ground-truth files use the same body; the header is
// optional when reading.

#ifndef PARSCAN_CLUSTERING_IO_H_
#define PARSCAN_CLUSTERING_IO_H_

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "parscan/base.h"
#include "parscan/graph.h"
#include "parscan/query.h"

namespace parscan {

inline std::string FormatDouble(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

inline void WriteClustering(const Clustering& clustering, const Labels& labels,
                            const QueryParams& params, std::ostream& out) {
  out << "# mu=" << params.mu << " epsilon=" << FormatDouble(params.epsilon)
      << " clusters=" << clustering.num_clusters << '\n';
  for (std::size_t v = 0; v < clustering.size(); ++v) {
    out << v << '\t';
    if (clustering.clustered(static_cast<VertexId>(v))) {
      out << clustering.assignment[v];
    } else {
      out << (labels[v] == VertexRole::kHub ? "hub" : "outlier");
    }
    out << '\n';
  }
}

struct ClusteringFile {
  std::uint64_t mu = 0;
  double epsilon = 0.0;
  bool has_header = false;
  Clustering clustering;
  Labels labels;
};

// Cluster ids in the body may be arbitrary non-negative integers; they are
// canonicalized on read. Vertices absent from the body are unclustered.
inline ClusteringFile ReadClustering(std::istream& in) {
  ClusteringFile file;
  std::vector<ClusterId> assignment;
  std::vector<VertexRole> roles;
  std::vector<char> seen;
  std::string line;
  std::size_t line_number = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, "clustering line " +
                                       std::to_string(line_number) + ": " +
                                       why);
  };
  while (std::getline(in, line)) {
    ++line_number;
    auto tokens = internal::SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      for (std::string_view token : tokens) {
        if (token.starts_with("mu=")) {
          if (!internal::ParseNumber(token.substr(3), file.mu)) fail("bad mu");
          file.has_header = true;
        } else if (token.starts_with("epsilon=")) {
          if (!internal::ParseNumber(token.substr(8), file.epsilon)) {
            fail("bad epsilon");
          }
        }
      }
      continue;
    }
    if (tokens.size() != 2) fail("expected '<id> <label>'");
    std::uint64_t id = 0;
    if (!internal::ParseNumber(tokens[0], id) || id >= kInvalidVertex) {
      fail("bad vertex id");
    }
    if (id >= assignment.size()) {
      assignment.resize(id + 1, kUnclustered);
      roles.resize(id + 1, VertexRole::kOutlier);
      seen.resize(id + 1, 0);
    }
    if (seen[id]) fail("vertex listed twice");
    seen[id] = 1;
    if (tokens[1] == "hub") {
      roles[id] = VertexRole::kHub;
    } else if (tokens[1] == "outlier") {
      roles[id] = VertexRole::kOutlier;
    } else {
      std::uint64_t cluster = 0;
      if (!internal::ParseNumber(tokens[1], cluster) ||
          cluster >= kUnclustered) {
        fail("bad cluster label");
      }
      assignment[id] = static_cast<ClusterId>(cluster);
      roles[id] = VertexRole::kClustered;
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading clustering");
  file.clustering.num_clusters = CanonicalizeLabels(assignment);
  file.clustering.assignment = std::move(assignment);
  file.clustering.is_core.assign(file.clustering.assignment.size(), 0);
  file.labels = std::move(roles);
  return file;
}

// Pads or checks a clustering read from disk against the vertex count.
inline void ResizeClustering(Clustering& clustering, std::size_t n) {
  if (clustering.size() > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "clustering names vertices beyond the graph");
  }
  clustering.assignment.resize(n, kUnclustered);
  clustering.is_core.resize(n, 0);
}

}  // namespace parscan

#endif  // PARSCAN_CLUSTERING_IO_H_
