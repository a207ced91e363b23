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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace parscan {
namespace {

using parscan_test::Label;

TEST(NaiveScan, TriangleOneCluster) {
  const OracleResult r =
      NaiveScan(parscan_test::Triangle(), Measure::kCosine, {2, 0.0, true});
  EXPECT_EQ(r.clustering.num_clusters, 1u);
  EXPECT_EQ(r.clustering.assignment, (std::vector<ClusterId>{0, 0, 0}));
  EXPECT_EQ(r.labels, Labels(3, VertexRole::kClustered));
}

TEST(NaiveSimilarities, WorkedExample) {
  const auto sims =
      NaiveSimilarities(parscan_test::Fig2Graph(), Measure::kCosine);
  EXPECT_NEAR(sims.at({Label(5), Label(6)}), 2.0 / std::sqrt(12.0), 1e-12);
}

TEST(NaiveScan, FigurePartition) {
  const OracleResult r =
      NaiveScan(parscan_test::Fig2Graph(), Measure::kCosine, {3, 0.6, true});
  EXPECT_EQ(r.clustering.assignment,
            (std::vector<ClusterId>{0, 0, 0, 0, kUnclustered, 1, 1, 1,
                                    kUnclustered, kUnclustered, 1}));
  EXPECT_EQ(r.labels[Label(5)], VertexRole::kHub);
  EXPECT_EQ(r.labels[Label(9)], VertexRole::kOutlier);
  EXPECT_EQ(r.labels[Label(10)], VertexRole::kOutlier);
}

TEST(NaiveScan, CoresCountedDirectly) {
  const Graph g = parscan_test::ErdosRenyi(30, 0.2, 12);
  const auto closed = oracle::ClosedNeighborhoods(g);
  for (double eps : {0.3, 0.5, 0.7}) {
    const OracleResult r = NaiveScan(g, Measure::kJaccard, {3, eps, true});
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      std::size_t count = 0;
      for (const auto& [u, w] : closed[v]) {
        count += oracle::PairSimilarity(closed[v], closed[u],
                                        Measure::kJaccard) >= eps;
      }
      EXPECT_EQ(r.clustering.is_core[v] != 0, count >= 3);
    }
  }
}

TEST(NaiveScan, Idempotent) {
  const Graph g = parscan_test::ErdosRenyi(40, 0.15, 2);
  const OracleResult a = NaiveScan(g, Measure::kCosine, {3, 0.5, true});
  const OracleResult b = NaiveScan(g, Measure::kCosine, {3, 0.5, true});
  EXPECT_EQ(a.clustering, b.clustering);
  EXPECT_EQ(a.labels, b.labels);
}

TEST(NaiveScan, SizeGuard) {
  const Graph big = ParseEdgeList("# vertices 10001\n0 1\n", false);
  try {
    NaiveScan(big, Measure::kCosine, {2, 0.5, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
}

TEST(NaiveScan, MeasureErrors) {
  const Graph g = parscan_test::Triangle();
  EXPECT_THROW(NaiveScan(g, Measure::kWeightedCosine, {2, 0.5, true}), Error);
  EXPECT_THROW(NaiveScan(g, Measure::kApproxCosine, {2, 0.5, true}), Error);
}

}  // namespace
}  // namespace parscan
