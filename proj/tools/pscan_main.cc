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

// pscan: build, query, sweep, and score SCAN clusterings from the shell.
//
//   pscan build-index --input g.edges --output g.idx [--similarity jaccard]
//   pscan query --index g.idx --mu 3 --epsilon 0.6 --deterministic-borders
//   pscan sweep --index g.idx --input g.edges --metric modularity
//   pscan quality --input g.edges --clustering c.txt
//   pscan oracle-check --input g.edges
//
// Failures print "error <category>: <message>" on stderr and exit non-zero
// (2 for bad flags, 3 for an oracle divergence, 1 otherwise).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "parscan/parscan.h"

namespace {

using parscan::ErrorCode;
using Clock = std::chrono::steady_clock;

struct RunConfig {
  std::string input;
  std::string index;
  std::string output;
  std::string clustering;
  std::string ground_truth;
  bool weighted = false;
  std::string similarity = "cosine";
  std::string approx = "none";
  std::optional<std::uint32_t> samples;
  std::uint64_t seed = 0;
  std::optional<int> threads;
  std::uint64_t mu = 2;
  double epsilon = 0.5;
  std::vector<std::uint64_t> mu_list;
  std::vector<double> eps_list;
  bool deterministic_borders = false;
  std::string metric;
};

struct Divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

[[noreturn]] void FlagError(const std::string& message) {
  throw parscan::Error(ErrorCode::kInvalidArgument, message);
}

parscan::Measure MeasureFlag(const RunConfig& cfg) {
  auto measure = parscan::ParseMeasure(cfg.similarity);
  if (!measure || !parscan::IsExactMeasure(*measure)) {
    FlagError("--similarity must be cosine, jaccard or weighted-cosine");
  }
  return *measure;
}

std::optional<parscan::ApproxConfig> ApproxFlag(const RunConfig& cfg) {
  if (cfg.approx == "none") {
    if (cfg.samples) FlagError("--samples requires --approx");
    return std::nullopt;
  }
  auto scheme = parscan::ParseSketchScheme(cfg.approx);
  if (!scheme) FlagError("unknown --approx scheme '" + cfg.approx + "'");
  if (!cfg.samples) FlagError("--approx requires --samples");
  if (*cfg.samples < 1) FlagError("--samples must be >= 1");
  parscan::ApproxConfig approx;
  approx.scheme = *scheme;
  approx.samples = *cfg.samples;
  approx.seed = cfg.seed;
  return approx;
}

std::ifstream OpenInput(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw parscan::Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

parscan::Graph LoadGraph(const RunConfig& cfg) {
  std::ifstream in = OpenInput(cfg.input);
  return parscan::LoadEdgeList(in, cfg.weighted);
}

parscan::ScanIndex LoadIndex(const std::string& path) {
  std::ifstream in = OpenInput(path, /*binary=*/true);
  return parscan::ReadIndex(in);
}

// Writes to --output, or stdout when it is empty.
template <typename Writer>
void Emit(const std::string& path, bool binary, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc
                                 : std::ios::out | std::ios::trunc);
  if (!out) throw parscan::Error(ErrorCode::kIo, "cannot write " + path);
  write(out);
  out.flush();
  if (!out) throw parscan::Error(ErrorCode::kIo, "error writing " + path);
}

// The index comes from --index when given, else it is built from --input.
parscan::ScanIndex ObtainIndex(const RunConfig& cfg,
                               const std::optional<parscan::Graph>& graph) {
  if (!cfg.index.empty()) {
    parscan::ScanIndex index = LoadIndex(cfg.index);
    if (graph && (graph->num_vertices() != index.num_vertices ||
                  graph->num_edges() != index.num_edges)) {
      FlagError("--index and --input describe different graphs");
    }
    return index;
  }
  if (!graph) FlagError("either --index or --input is required");
  return parscan::BuildScanIndex(*graph, MeasureFlag(cfg), ApproxFlag(cfg));
}

int RunBuildIndex(const RunConfig& cfg) {
  if (cfg.output.empty()) FlagError("build-index requires --output");
  const parscan::Measure measure = MeasureFlag(cfg);
  const auto approx = ApproxFlag(cfg);

  auto start = Clock::now();
  const parscan::Graph graph = LoadGraph(cfg);
  const double load_seconds = SecondsSince(start);
  parscan::BuildTimings timings;
  const parscan::ScanIndex index =
      parscan::BuildScanIndex(graph, measure, approx, &timings);
  start = Clock::now();
  const std::string bytes = parscan::SerializeIndex(index);
  Emit(cfg.output, true, [&](std::ostream& out) { out << bytes; });
  const double write_seconds = SecondsSince(start);

  nlohmann::ordered_json report;
  report["timings"] = {
      {"load", load_seconds},
      {"similarity", timings.similarity_seconds},
      {"neighbor-order", timings.neighbor_order_seconds},
      {"core-order", timings.core_order_seconds},
      {"write", write_seconds},
  };
  report["config"] = {
      {"input", cfg.input},
      {"output", cfg.output},
      {"weighted", cfg.weighted},
      {"similarity", cfg.similarity},
      {"approx", cfg.approx},
      {"samples", approx ? approx->samples : 0},
      {"seed", cfg.seed},
      {"threads", parscan::NumThreads()},
  };
  report["graph"] = {{"n", graph.num_vertices()}, {"m", graph.num_edges()}};
  report["index"] = {{"bytes", bytes.size()},
                     {"max_mu", index.core_order.max_mu},
                     {"config_digest", index.config_digest}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

int RunQuery(const RunConfig& cfg) {
  std::optional<parscan::Graph> graph;
  if (!cfg.input.empty()) graph = LoadGraph(cfg);
  const parscan::ScanIndex index = ObtainIndex(cfg, graph);
  const parscan::QueryParams params{cfg.mu, cfg.epsilon,
                                    cfg.deterministic_borders};
  const parscan::Clustering clustering = parscan::Cluster(index, params);
  const parscan::Labels labels = parscan::LabelHubsOutliers(index, clustering);
  Emit(cfg.output, false, [&](std::ostream& out) {
    parscan::WriteClustering(clustering, labels, params, out);
  });
  return 0;
}

parscan::Clustering ReadClusteringFile(const std::string& path,
                                       std::size_t n) {
  std::ifstream in = OpenInput(path);
  parscan::Clustering clustering = parscan::ReadClustering(in).clustering;
  parscan::ResizeClustering(clustering, n);
  return clustering;
}

int RunSweep(const RunConfig& cfg) {
  std::optional<parscan::Graph> graph;
  if (!cfg.input.empty()) graph = LoadGraph(cfg);
  const parscan::ScanIndex index = ObtainIndex(cfg, graph);
  const std::string metric = cfg.metric.empty() ? "modularity" : cfg.metric;
  const std::vector<std::uint64_t> mus =
      cfg.mu_list.empty() ? parscan::DefaultMuGrid() : cfg.mu_list;
  const std::vector<double> eps =
      cfg.eps_list.empty() ? parscan::DefaultEpsilonGrid() : cfg.eps_list;
  for (std::uint64_t mu : mus) {
    if (mu < 2) FlagError("--mu-list entries must be >= 2");
  }
  for (double e : eps) {
    if (!(e >= 0.0 && e <= 1.0)) FlagError("--eps-list entries must be in [0, 1]");
  }

  parscan::SweepResult result;
  if (metric == "modularity") {
    if (!graph) FlagError("--metric modularity requires --input");
    result = parscan::Sweep(index, mus, eps, [&](const parscan::Clustering& c) {
      return parscan::Modularity(*graph, c);
    });
  } else {
    if (cfg.ground_truth.empty()) FlagError("--metric ari requires --ground-truth");
    const parscan::Clustering truth =
        ReadClusteringFile(cfg.ground_truth, index.num_vertices);
    result = parscan::Sweep(index, mus, eps, [&](const parscan::Clustering& c) {
      return parscan::AdjustedRandIndex(c, truth);
    });
  }
  Emit(cfg.output, false, [&](std::ostream& out) {
    out << "mu,epsilon,score\n";
    for (const parscan::SweepRow& row : result.rows) {
      out << row.mu << ',' << parscan::FormatDouble(row.epsilon) << ','
          << parscan::FormatDouble(row.score) << '\n';
    }
    out << "# best mu=" << result.best.mu
        << " epsilon=" << parscan::FormatDouble(result.best.epsilon) << ' '
        << metric << '=' << parscan::FormatDouble(result.best.score) << '\n';
  });
  return 0;
}

int RunQuality(const RunConfig& cfg) {
  if (cfg.clustering.empty()) FlagError("quality requires --clustering");
  std::ifstream in = OpenInput(cfg.clustering);
  parscan::ClusteringFile file = parscan::ReadClustering(in);

  nlohmann::ordered_json report;
  report["clustering"] = cfg.clustering;
  const bool want_modularity = cfg.metric.empty() || cfg.metric == "modularity";
  const bool want_ari = cfg.metric == "ari" ||
                        (cfg.metric.empty() && !cfg.ground_truth.empty());
  if (want_modularity) {
    if (cfg.input.empty()) FlagError("modularity requires --input");
    const parscan::Graph graph = LoadGraph(cfg);
    parscan::ResizeClustering(file.clustering, graph.num_vertices());
    report["modularity"] = parscan::Modularity(graph, file.clustering);
  }
  if (want_ari) {
    if (cfg.ground_truth.empty()) FlagError("ari requires --ground-truth");
    std::ifstream truth_in = OpenInput(cfg.ground_truth);
    parscan::Clustering truth = parscan::ReadClustering(truth_in).clustering;
    const std::size_t n = std::max(truth.size(), file.clustering.size());
    parscan::ResizeClustering(truth, n);
    parscan::ResizeClustering(file.clustering, n);
    report["ari"] = parscan::AdjustedRandIndex(file.clustering, truth);
  }
  report["clusters"] = file.clustering.num_clusters;
  std::cout << report.dump(2) << '\n';
  return 0;
}

std::string DescribePoint(std::uint64_t mu, double eps) {
  return "mu=" + std::to_string(mu) + " epsilon=" + parscan::FormatDouble(eps);
}

int RunOracleCheck(const RunConfig& cfg) {
  const parscan::Measure measure = MeasureFlag(cfg);
  const parscan::Graph graph = LoadGraph(cfg);
  if (graph.num_vertices() > parscan::kOracleMaxVertices) {
    throw parscan::Error(ErrorCode::kSizeGuard,
                         "oracle-check is limited to " +
                             std::to_string(parscan::kOracleMaxVertices) +
                             " vertices");
  }
  std::vector<std::uint64_t> mus = cfg.mu_list;
  if (mus.empty()) {
    for (std::uint64_t mu = 2; mu <= 10; ++mu) mus.push_back(mu);
  }
  std::vector<double> eps = cfg.eps_list;
  if (eps.empty()) {
    for (int i = 0; i <= 20; ++i) eps.push_back(i / 20.0);
  }
  const parscan::ScanIndex index =
      parscan::BuildScanIndex(graph, measure, std::nullopt);

  std::size_t points = 0;
  for (std::uint64_t mu : mus) {
    for (double e : eps) {
      const parscan::QueryParams params{mu, e, true};
      const parscan::Clustering fast = parscan::Cluster(index, params);
      const parscan::Labels fast_labels =
          parscan::LabelHubsOutliers(graph, fast);
      const parscan::OracleResult slow =
          parscan::NaiveScan(graph, measure, params);
      std::string what;
      for (std::size_t v = 0; v < graph.num_vertices() && what.empty(); ++v) {
        if (fast.is_core[v] != slow.clustering.is_core[v]) {
          what = "core flag of vertex " + std::to_string(v);
        } else if (fast.assignment[v] != slow.clustering.assignment[v]) {
          what = "cluster of vertex " + std::to_string(v);
        } else if (fast_labels[v] != slow.labels[v]) {
          what = "hub/outlier label of vertex " + std::to_string(v);
        }
      }
      if (what.empty() && fast.num_clusters != slow.clustering.num_clusters) {
        what = "cluster count";
      }
      if (!what.empty()) {
        std::cout << "FAIL " << DescribePoint(mu, e) << ' ' << what << '\n';
        throw Divergence("index query diverges from naive SCAN at " +
                         DescribePoint(mu, e));
      }
      ++points;
    }
  }
  std::cout << "PASS points=" << points << " n=" << graph.num_vertices()
            << " m=" << graph.num_edges() << '\n';
  return 0;
}

void AddGraphFlags(CLI::App* cmd, RunConfig& cfg, bool required) {
  auto* input = cmd->add_option("--input", cfg.input, "Edge-list file");
  if (required) input->required();
  cmd->add_flag("--weighted", cfg.weighted, "Read a third weight column");
  cmd->add_option("--similarity", cfg.similarity,
                  "cosine | jaccard | weighted-cosine")
      ->check(CLI::IsMember({"cosine", "jaccard", "weighted-cosine"}));
}

void AddApproxFlags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--approx", cfg.approx,
                  "none | simhash | minhash-standard | minhash-kpartition")
      ->check(CLI::IsMember(
          {"none", "simhash", "minhash-standard", "minhash-kpartition"}));
  cmd->add_option("--samples", cfg.samples, "Sketch size k");
  cmd->add_option("--seed", cfg.seed, "Sketch seed");
}

void AddGridFlags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mu-list", cfg.mu_list, "Comma-separated mu values")
      ->delimiter(',');
  cmd->add_option("--eps-list", cfg.eps_list, "Comma-separated epsilon values")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Index-based structural graph clustering"};
  app.require_subcommand(1);
  app.add_option("--threads", cfg.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  auto* build = app.add_subcommand("build-index", "Build and write an index");
  AddGraphFlags(build, cfg, true);
  AddApproxFlags(build, cfg);
  build->add_option("--output", cfg.output, "Index file")->required();

  auto* query = app.add_subcommand("query", "Cluster for one (mu, epsilon)");
  AddGraphFlags(query, cfg, false);
  AddApproxFlags(query, cfg);
  query->add_option("--index", cfg.index, "Index file");
  query->add_option("--output", cfg.output, "Clustering file (default stdout)");
  query->add_option("--mu", cfg.mu, "Core size threshold")->required();
  query->add_option("--epsilon", cfg.epsilon, "Similarity threshold")
      ->required();
  query->add_flag("--deterministic-borders", cfg.deterministic_borders,
                  "Assign borders to their most similar core");

  auto* sweep = app.add_subcommand("sweep", "Score a (mu, epsilon) grid");
  AddGraphFlags(sweep, cfg, false);
  AddApproxFlags(sweep, cfg);
  AddGridFlags(sweep, cfg);
  sweep->add_option("--index", cfg.index, "Index file");
  sweep->add_option("--output", cfg.output, "CSV file (default stdout)");
  sweep->add_option("--metric", cfg.metric, "modularity | ari")
      ->check(CLI::IsMember({"modularity", "ari"}));
  sweep->add_option("--ground-truth", cfg.ground_truth, "Clustering file");

  auto* quality = app.add_subcommand("quality", "Score a clustering file");
  AddGraphFlags(quality, cfg, false);
  quality->add_option("--clustering", cfg.clustering, "Clustering file")
      ->required();
  quality->add_option("--metric", cfg.metric, "modularity | ari")
      ->check(CLI::IsMember({"modularity", "ari"}));
  quality->add_option("--ground-truth", cfg.ground_truth, "Clustering file");

  auto* oracle = app.add_subcommand(
      "oracle-check", "Compare index queries against naive SCAN on a grid");
  AddGraphFlags(oracle, cfg, true);
  AddGridFlags(oracle, cfg);

  for (CLI::App* cmd : {build, query, sweep, quality, oracle}) {
    cmd->add_option("--threads", cfg.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (cfg.threads) parscan::SetNumThreads(*cfg.threads);
    if (build->parsed()) return RunBuildIndex(cfg);
    if (query->parsed()) return RunQuery(cfg);
    if (sweep->parsed()) return RunSweep(cfg);
    if (quality->parsed()) return RunQuality(cfg);
    return RunOracleCheck(cfg);
  } catch (const Divergence& e) {
    std::cerr << "error divergence: " << e.what() << '\n';
    return 3;
  } catch (const parscan::Error& e) {
    std::cerr << "error " << parscan::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error internal: " << e.what() << '\n';
    return 1;
  }
}
