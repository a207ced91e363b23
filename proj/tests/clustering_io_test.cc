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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace parscan {
namespace {

TEST(WriteClustering, FigureFormat) {
  const Graph g = parscan_test::Fig2Graph();
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  const QueryParams params{3, 0.6, true};
  const Clustering c = Cluster(index, params);
  std::ostringstream out;
  WriteClustering(c, LabelHubsOutliers(g, c), params, out);
  EXPECT_EQ(out.str(),
            "# mu=3 epsilon=0.6 clusters=2\n"
            "0\t0\n1\t0\n2\t0\n3\t0\n4\thub\n5\t1\n6\t1\n7\t1\n"
            "8\toutlier\n9\toutlier\n10\t1\n");
}

TEST(ReadClustering, RoundTrip) {
  const Graph g = parscan_test::ErdosRenyi(50, 0.1, 4);
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  const QueryParams params{3, 0.45, true};
  const Clustering c = Cluster(index, params);
  const Labels labels = LabelHubsOutliers(g, c);
  std::stringstream buffer;
  WriteClustering(c, labels, params, buffer);
  const ClusteringFile file = ReadClustering(buffer);
  EXPECT_TRUE(file.has_header);
  EXPECT_EQ(file.mu, 3u);
  EXPECT_EQ(file.epsilon, 0.45);
  EXPECT_EQ(file.clustering.assignment, c.assignment);
  EXPECT_EQ(file.clustering.num_clusters, c.num_clusters);
  EXPECT_EQ(file.labels, labels);
}

TEST(ReadClustering, CanonicalizesAndPads) {
  std::istringstream in("0 7\n2 3\n3 7\n1 hub\n");
  ClusteringFile file = ReadClustering(in);
  EXPECT_FALSE(file.has_header);
  EXPECT_EQ(file.clustering.assignment,
            (std::vector<ClusterId>{0, kUnclustered, 1, 0}));
  EXPECT_EQ(file.labels[1], VertexRole::kHub);
  ResizeClustering(file.clustering, 6);
  EXPECT_EQ(file.clustering.size(), 6u);
  EXPECT_FALSE(file.clustering.clustered(5));
  EXPECT_THROW(ResizeClustering(file.clustering, 3), Error);
}

TEST(ReadClustering, Errors) {
  for (const char* text : {"0 1\n0 2\n", "0\n", "x 1\n", "0 blue\n",
                           "# mu=abc\n0 1\n"}) {
    std::istringstream in(text);
    try {
      ReadClustering(in);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << text;
    }
  }
}

}  // namespace
}  // namespace parscan
