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

using parscan_test::FromAssignment;

double ModularityDoubleSum(const Graph& g, const Clustering& c) {
  const auto labels = SingletonExpandedLabels(c);
  const std::size_t n = g.num_vertices();
  std::vector<double> degree(n, 0.0);
  double total = 0.0;
  for (VertexId v = 0; v < n; ++v) {
    for (double w : g.weights(v)) degree[v] += w;
    total += degree[v];
  }
  double q = 0.0;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (labels[u] != labels[v]) continue;
      const double a = u == v ? 0.0 : g.edge_weight(u, v);
      q += a - degree[u] * degree[v] / total;
    }
  }
  return q / total;
}

double PairCountingAri(const Clustering& x, const Clustering& y) {
  const auto lx = SingletonExpandedLabels(x);
  const auto ly = SingletonExpandedLabels(y);
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    for (std::size_t j = i + 1; j < lx.size(); ++j) {
      const bool sx = lx[i] == lx[j];
      const bool sy = ly[i] == ly[j];
      if (sx && sy) ++a;
      else if (sx) ++b;
      else if (sy) ++c;
      else ++d;
    }
  }
  return 2 * (a * d - b * c) / ((a + b) * (b + d) + (a + c) * (c + d));
}

TEST(Modularity, SingleClusterIsZero) {
  const Graph tri = parscan_test::Triangle();
  EXPECT_NEAR(Modularity(tri, FromAssignment({0, 0, 0})), 0.0, 1e-12);
  const Graph g = parscan_test::ErdosRenyi(50, 0.1, 3, true);
  EXPECT_NEAR(Modularity(g, FromAssignment(std::vector<ClusterId>(50, 0))),
              0.0, 1e-12);
}

TEST(Modularity, TriangleSingletons) {
  const Graph tri = parscan_test::Triangle();
  const Clustering none = FromAssignment(std::vector<ClusterId>(3, kUnclustered));
  EXPECT_NEAR(Modularity(tri, none), -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(Modularity(tri, FromAssignment({0, 1, 2})), -1.0 / 3.0, 1e-12);
}

TEST(Modularity, MatchesDoubleSum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g =
        parscan_test::ErdosRenyi(40, 0.15, seed, /*weighted=*/seed % 2 == 0);
    const Clustering c = parscan_test::RandomClustering(40, 5, 0.2, seed + 1);
    const double q = Modularity(g, c);
    EXPECT_NEAR(q, ModularityDoubleSum(g, c), 1e-12);
    EXPECT_LE(q, 1.0);
  }
}

TEST(Modularity, Errors) {
  const Graph empty = ParseEdgeList("# vertices 3\n", false);
  EXPECT_THROW(Modularity(empty, FromAssignment({0, 0, 0})), Error);
  EXPECT_THROW(Modularity(parscan_test::Triangle(), FromAssignment({0, 0})),
               Error);
}

TEST(AdjustedRandIndex, IdenticalIsOne) {
  const Clustering c = parscan_test::RandomClustering(30, 4, 0.2, 7);
  EXPECT_DOUBLE_EQ(AdjustedRandIndex(c, c), 1.0);
}

TEST(AdjustedRandIndex, SingletonsVersusOneCluster) {
  const Clustering singletons =
      FromAssignment(std::vector<ClusterId>(4, kUnclustered));
  const Clustering one = FromAssignment({0, 0, 0, 0});
  EXPECT_EQ(AdjustedRandIndex(singletons, one), 0.0);
  EXPECT_EQ(AdjustedRandIndex(one, singletons), 0.0);
}

TEST(AdjustedRandIndex, DegenerateIdenticalPartitions) {
  const Clustering singletons = FromAssignment({0, 1, 2, 3});
  const Clustering unclustered =
      FromAssignment(std::vector<ClusterId>(4, kUnclustered));
  EXPECT_EQ(AdjustedRandIndex(singletons, unclustered), 1.0);
  const Clustering one = FromAssignment({0, 0, 0});
  EXPECT_EQ(AdjustedRandIndex(one, one), 1.0);
}

TEST(AdjustedRandIndex, MatchesPairCounting) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Clustering x = parscan_test::RandomClustering(60, 4, 0.3, seed);
    const Clustering y = parscan_test::RandomClustering(60, 6, 0.1, seed + 99);
    const double ari = AdjustedRandIndex(x, y);
    EXPECT_NEAR(ari, PairCountingAri(x, y), 1e-12);
    EXPECT_NEAR(ari, AdjustedRandIndex(y, x), 1e-15);
    EXPECT_LE(ari, 1.0);
  }
}

TEST(AdjustedRandIndex, SizeMismatch) {
  EXPECT_THROW(AdjustedRandIndex(FromAssignment({0, 0}), FromAssignment({0})),
               Error);
}

TEST(Sweep, SinglePointGrid) {
  const Graph g = parscan_test::Fig2Graph();
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  const std::vector<std::uint64_t> mus{3};
  const std::vector<double> eps{0.6};
  const SweepResult r = Sweep(index, mus, eps, [&](const Clustering& c) {
    return Modularity(g, c);
  });
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.best, r.rows[0]);
  EXPECT_EQ(r.best.mu, 3u);
  EXPECT_EQ(r.best.epsilon, 0.6);
}

TEST(Sweep, TiesGoToSmallerParameters) {
  const ScanIndex index = BuildScanIndex(parscan_test::Fig2Graph(),
                                         Measure::kCosine, std::nullopt);
  const std::vector<std::uint64_t> mus{4, 2, 3};
  const std::vector<double> eps{0.5, 0.2, 0.9};
  const SweepResult r =
      Sweep(index, mus, eps, [](const Clustering&) { return 0.25; });
  EXPECT_EQ(r.rows.size(), 9u);
  EXPECT_EQ(r.best.mu, 2u);
  EXPECT_EQ(r.best.epsilon, 0.2);
}

TEST(Sweep, LargeMuScoresAsAllSingletons) {
  const Graph g = parscan_test::Fig2Graph();
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  const std::vector<std::uint64_t> mus{64};
  const std::vector<double> eps{0.1, 0.5};
  const SweepResult r = Sweep(index, mus, eps, [&](const Clustering& c) {
    return Modularity(g, c);
  });
  const Clustering none =
      FromAssignment(std::vector<ClusterId>(11, kUnclustered));
  for (const SweepRow& row : r.rows) {
    EXPECT_EQ(row.score, Modularity(g, none));
  }
}

TEST(Sweep, FigureGridMatchesOracleSweep) {
  const Graph g = parscan_test::Fig2Graph();
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  const std::vector<std::uint64_t> mus{2, 3, 4};
  std::vector<double> eps;
  for (int i = 1; i <= 9; ++i) eps.push_back(i / 10.0);
  const SweepResult r = Sweep(index, mus, eps, [&](const Clustering& c) {
    return Modularity(g, c);
  });
  SweepRow best{0, 0.0, -2.0};
  for (std::uint64_t mu : mus) {
    for (double e : eps) {
      const double q =
          Modularity(g, NaiveScan(g, Measure::kCosine, {mu, e, true}).clustering);
      if (q > best.score) best = {mu, e, q};
    }
  }
  EXPECT_EQ(r.best.mu, best.mu);
  EXPECT_EQ(r.best.epsilon, best.epsilon);
  EXPECT_NEAR(r.best.score, best.score, 1e-15);
  const Clustering chosen = Cluster(index, {r.best.mu, r.best.epsilon, true});
  EXPECT_GE(chosen.num_clusters, 2u);
  // Sweeping again gives the same table.
  const SweepResult again = Sweep(index, mus, eps, [&](const Clustering& c) {
    return Modularity(g, c);
  });
  EXPECT_EQ(again.rows, r.rows);
}

TEST(Sweep, DefaultGrid) {
  const auto mus = DefaultMuGrid();
  ASSERT_EQ(mus.size(), 18u);
  EXPECT_EQ(mus.front(), 2u);
  EXPECT_EQ(mus.back(), 1u << 18);
  const auto eps = DefaultEpsilonGrid();
  ASSERT_EQ(eps.size(), 99u);
  EXPECT_EQ(eps.front(), 0.01);
  EXPECT_EQ(eps.back(), 0.99);
}

}  // namespace
}  // namespace parscan
