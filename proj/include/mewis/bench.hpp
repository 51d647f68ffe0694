#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mewis/entropy.hpp"
#include "mewis/graph.hpp"
#include "mewis/result.hpp"
#include "mewis/train.hpp"

namespace mewis {

SolveResult solve_mewis(const Graph& g, const EntropyWeights& w, const TrainConfig& cfg);
SolveResult solve_greedy(const Graph& g, const EntropyWeights& w);
SolveResult solve_exact(const Graph& g, const EntropyWeights& w, bool branch_and_bound);

/// Best of several seeded runs; the heaviest set wins, ties to the earlier
/// seed. `seed` in the result is the winning seed.
SolveResult solve_mewis_best_of(const Graph& g, const EntropyWeights& w, TrainConfig cfg,
                                std::span<const std::uint64_t> seeds);

/// Raw edge list with arbitrary node labels, densely re-indexed in order of
/// first appearance.
struct Converted {
  Graph graph;
  std::vector<std::string> labels;  // labels[k] is the raw id of node k
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};
Converted convert_edge_list(std::string_view text);

struct BenchOptions {
  std::filesystem::path data_dir;
  std::vector<std::string> datasets = {"cora", "citeseer", "pubmed"};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  TrainConfig cfg = mis_config();
  // Random suite.
  std::size_t count = 50;
  std::size_t n = 16;
  double p = 0.5;
  std::uint64_t base_seed = 1;
  std::size_t jobs = 1;
};

/// Greedy and best-of-seeds MEWIS on `<data_dir>/<name>.txt` for each dataset;
/// absent files are listed under "missing".
nlohmann::json run_citation_bench(const BenchOptions& opts);

/// Seeded Erdos-Renyi instances with unit weights: exact (n <= 20), greedy and
/// best-of-seeds MEWIS, with approximation ratios.
nlohmann::json run_random_bench(const BenchOptions& opts);

std::string bench_markdown(const nlohmann::json& report);

/// Milliseconds for one scorer forward plus loss at the given depth/width.
double time_forward_ms(const Graph& g, const EntropyWeights& w, const TrainConfig& cfg);

}  // namespace mewis
