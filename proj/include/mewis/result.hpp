#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mewis/graph.hpp"

namespace mewis {

/// Outcome of one solver run, as written by the CLI.
struct SolveResult {
  std::string solver;
  std::string graph_name;
  std::size_t n = 0;
  std::size_t m = 0;
  NodeSet selected;  // ascending original ids
  std::size_t size = 0;
  double total_weight = 0.0;
  std::vector<double> loss_trace;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

void to_json(nlohmann::json& j, const SolveResult& r);
void from_json(const nlohmann::json& j, SolveResult& r);

/// Re-checks independence and the size/weight fields against `g` before
/// writing; throws std::logic_error on an inconsistent result.
void write_result(const SolveResult& r, const Graph& g, std::span<const double> weights,
                  const std::filesystem::path& path);
SolveResult read_result(const std::filesystem::path& path);

}  // namespace mewis
