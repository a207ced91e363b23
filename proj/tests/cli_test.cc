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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.h"

namespace parscan {
namespace {

using parscan_test::FixturePath;
using parscan_test::ReadFile;
using parscan_test::TempPath;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

RunResult Pscan(const std::string& args) {
  const std::string out = TempPath("stdout");
  const std::string err = TempPath("stderr");
  const std::string cmd = std::string(PSCAN_BINARY) + " " + args + " >" + out +
                          " 2>" + err;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = ReadFile(out);
  r.err = ReadFile(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

std::string WriteGraph(const Graph& g, const std::string& name) {
  const std::string path = TempPath(name);
  std::ofstream out(path);
  WriteEdgeList(g, out);
  return path;
}

TEST(Cli, BuildIndexTriangle) {
  const std::string idx = TempPath("tri.idx");
  const RunResult r = Pscan("build-index --input " +
                            FixturePath("triangle.edges") + " --output " + idx);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  for (const char* phase : {"load", "similarity", "neighbor-order",
                            "core-order"}) {
    EXPECT_TRUE(report["timings"].contains(phase)) << phase;
  }
  EXPECT_EQ(report["config"]["similarity"], "cosine");
  EXPECT_EQ(report["graph"]["m"], 3);
  std::ifstream in(idx, std::ios::binary);
  const ScanIndex index = ReadIndex(in);
  for (std::uint64_t mu : {2, 3}) {
    EXPECT_EQ(index.core_order.candidates(mu).size(), 3u);
    for (double t : index.core_order.core_thresholds(mu)) EXPECT_EQ(t, 1.0);
  }
  std::remove(idx.c_str());
}

TEST(Cli, ZeroSamplesIsFlagError) {
  const RunResult r =
      Pscan("build-index --input " + FixturePath("triangle.edges") +
            " --output " + TempPath("never.idx") +
            " --approx simhash --samples 0");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.err.rfind("error invalid_argument:", 0), 0u) << r.err;
}

TEST(Cli, FlagCombinationErrors) {
  const std::string input = " --input " + FixturePath("triangle.edges");
  const std::string out = " --output " + TempPath("never.idx");
  EXPECT_EQ(Pscan("build-index" + input + out + " --samples 8").status, 2);
  EXPECT_EQ(Pscan("build-index" + input + out + " --approx simhash").status, 2);
  EXPECT_EQ(Pscan("build-index" + input + out +
                  " --similarity jaccard --approx simhash --samples 8")
                .status,
            2);
  EXPECT_EQ(Pscan("build-index" + input + out + " --similarity euclid").status,
            2);
  EXPECT_EQ(Pscan("frobnicate").status, 2);
  const RunResult no_mu = Pscan("query" + input + " --epsilon 0.5");
  EXPECT_EQ(no_mu.status, 2);
  EXPECT_EQ(no_mu.err.rfind("error usage:", 0), 0u) << no_mu.err;
}

TEST(Cli, IoAndFormatErrors) {
  const RunResult missing =
      Pscan("query --input /nonexistent/graph.edges --mu 2 --epsilon 0.5");
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(missing.err.rfind("error io:", 0), 0u) << missing.err;

  const std::string bogus = TempPath("bogus.idx");
  parscan_test::WriteFile(bogus, "definitely not an index");
  const RunResult bad = Pscan("query --index " + bogus + " --mu 2 --epsilon 0.5");
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(bad.err.rfind("error version:", 0), 0u) << bad.err;
  std::remove(bogus.c_str());

  const std::string malformed = TempPath("malformed.edges");
  parscan_test::WriteFile(malformed, "0 1\n1 x\n");
  const RunResult parse = Pscan("oracle-check --input " + malformed);
  EXPECT_EQ(parse.status, 1);
  EXPECT_EQ(parse.err.rfind("error parse:", 0), 0u) << parse.err;
  std::remove(malformed.c_str());
}

TEST(Cli, SameSeedByteIdenticalIndex) {
  const Graph g = parscan_test::ErdosRenyi(80, 0.3, 3);
  const std::string input = WriteGraph(g, "seeded.edges");
  const std::string a = TempPath("a.idx");
  const std::string b = TempPath("b.idx");
  const std::string flags =
      " --approx simhash --samples 16 --seed 42 --input " + input;
  ASSERT_EQ(Pscan("build-index --output " + a + flags).status, 0);
  ASSERT_EQ(Pscan("build-index --output " + b + flags).status, 0);
  EXPECT_EQ(ReadFile(a), ReadFile(b));
  EXPECT_FALSE(ReadFile(a).empty());
  for (const auto& p : {input, a, b}) std::remove(p.c_str());
}

TEST(Cli, QueryTriangleOneCluster) {
  const RunResult r = Pscan("query --input " + FixturePath("triangle.edges") +
                            " --mu 2 --epsilon 0");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "# mu=2 epsilon=0 clusters=1\n0\t0\n1\t0\n2\t0\n");
}

TEST(Cli, QueryFigureFromIndexFile) {
  const std::string idx = TempPath("fig.idx");
  ASSERT_EQ(Pscan("build-index --input " + FixturePath("fig2.edges") +
                  " --output " + idx)
                .status,
            0);
  const std::string out = TempPath("fig.clusters");
  const RunResult r = Pscan("query --index " + idx +
                            " --mu 3 --epsilon 0.6 --deterministic-borders"
                            " --output " + out);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(ReadFile(out),
            "# mu=3 epsilon=0.6 clusters=2\n"
            "0\t0\n1\t0\n2\t0\n3\t0\n4\thub\n5\t1\n6\t1\n7\t1\n"
            "8\toutlier\n9\toutlier\n10\t1\n");
  std::remove(idx.c_str());
  std::remove(out.c_str());
}

TEST(Cli, OracleCheckFixtures) {
  for (const char* name : {"triangle.edges", "fig2.edges"}) {
    const RunResult r = Pscan("oracle-check --input " + FixturePath(name));
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.rfind("PASS points=189", 0), 0u) << r.out;
  }
  const RunResult jac = Pscan("oracle-check --similarity jaccard --input " +
                              FixturePath("fig2.edges"));
  EXPECT_EQ(jac.status, 0) << jac.err;
}

TEST(Cli, OracleCheckRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double p = std::vector<double>{0.05, 0.15, 0.3}[seed % 3];
    const Graph g = parscan_test::ErdosRenyi(20 + seed % 45, p, seed);
    const std::string input = WriteGraph(g, "oracle.edges");
    const RunResult r = Pscan("oracle-check --input " + input);
    EXPECT_EQ(r.status, 0) << "seed " << seed << ": " << r.out << r.err;
    std::remove(input.c_str());
  }
}

TEST(Cli, SweepCsvAndSummary) {
  const RunResult r = Pscan("sweep --input " + FixturePath("fig2.edges") +
                            " --mu-list 2,3,4 --eps-list 0.3,0.6");
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "mu,epsilon,score");
  int rows = 0;
  while (std::getline(lines, line) && line.rfind("#", 0) != 0) ++rows;
  EXPECT_EQ(rows, 6);
  EXPECT_EQ(line.rfind("# best mu=", 0), 0u) << line;

  const Graph g = parscan_test::Fig2Graph();
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  const std::vector<std::uint64_t> mus{2, 3, 4};
  const std::vector<double> eps{0.3, 0.6};
  const SweepResult expected = Sweep(index, mus, eps, [&](const Clustering& c) {
    return Modularity(g, c);
  });
  EXPECT_EQ(line, "# best mu=" + std::to_string(expected.best.mu) +
                      " epsilon=" + FormatDouble(expected.best.epsilon) +
                      " modularity=" + FormatDouble(expected.best.score));
}

TEST(Cli, SweepAriAgainstGroundTruth) {
  const std::string truth = TempPath("truth.clusters");
  ASSERT_EQ(Pscan("query --input " + FixturePath("fig2.edges") +
                  " --mu 3 --epsilon 0.6 --deterministic-borders --output " +
                  truth)
                .status,
            0);
  const RunResult r = Pscan("sweep --input " + FixturePath("fig2.edges") +
                            " --metric ari --ground-truth " + truth +
                            " --mu-list 3 --eps-list 0.6,0.9");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("3,0.6,1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# best mu=3 epsilon=0.6 ari=1"), std::string::npos);
  EXPECT_EQ(Pscan("sweep --input " + FixturePath("fig2.edges") +
                  " --metric ari")
                .status,
            2);
  std::remove(truth.c_str());
}

TEST(Cli, QualityReport) {
  const std::string clusters = TempPath("q.clusters");
  ASSERT_EQ(Pscan("query --input " + FixturePath("fig2.edges") +
                  " --mu 3 --epsilon 0.6 --deterministic-borders --output " +
                  clusters)
                .status,
            0);
  const RunResult r = Pscan("quality --input " + FixturePath("fig2.edges") +
                            " --clustering " + clusters + " --ground-truth " +
                            clusters);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  const Graph g = parscan_test::Fig2Graph();
  const ScanIndex index = BuildScanIndex(g, Measure::kCosine, std::nullopt);
  EXPECT_DOUBLE_EQ(report["modularity"].get<double>(),
                   Modularity(g, Cluster(index, {3, 0.6, true})));
  EXPECT_DOUBLE_EQ(report["ari"].get<double>(), 1.0);
  EXPECT_EQ(report["clusters"], 2);
  std::remove(clusters.c_str());
}

TEST(Cli, ThreadCountDoesNotChangeOutputs) {
  const Graph g = parscan_test::ErdosRenyi(300, 0.05, 17, true);
  const std::string input = WriteGraph(g, "threads.edges");
  for (const std::string measure : {"cosine", "jaccard", "weighted-cosine"}) {
    std::string bytes[2];
    std::string clusters[2];
    int slot = 0;
    for (int threads : {1, 4}) {
      const std::string idx = TempPath("t.idx");
      const std::string out = TempPath("t.clusters");
      const std::string common = " --threads " + std::to_string(threads);
      ASSERT_EQ(Pscan("build-index --weighted --similarity " + measure +
                      " --input " + input + " --output " + idx + common)
                    .status,
                0);
      ASSERT_EQ(Pscan("query --index " + idx +
                      " --mu 3 --epsilon 0.3 --deterministic-borders --output " +
                      out + common)
                    .status,
                0);
      bytes[slot] = ReadFile(idx);
      clusters[slot] = ReadFile(out);
      ++slot;
      std::remove(idx.c_str());
      std::remove(out.c_str());
    }
    EXPECT_EQ(bytes[0], bytes[1]) << measure;
    EXPECT_EQ(clusters[0], clusters[1]) << measure;
  }
  std::remove(input.c_str());
}

}  // namespace
}  // namespace parscan
