#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "mewis/graph.hpp"

namespace mewis {

enum class OracleMethod { Enumeration, BranchAndBound };

struct OracleResult {
  NodeSet best_set;  // ascending ids
  double best_weight = 0.0;  // summed in ascending id order
  std::uint64_t nodes_explored = 0;
  OracleMethod method = OracleMethod::Enumeration;
};

std::string to_string(OracleMethod m);

inline constexpr std::size_t kMaxEnumerationNodes = 20;
inline constexpr std::size_t kMaxBranchAndBoundNodes = 64;

/// Exhaustive search over all 2^n subsets. Among optimal sets the one whose
/// ascending id list is lexicographically smallest wins.
OracleResult exact_enumerate(const Graph& g, std::span<const double> weights);

/// Branches on a maximum-degree vertex, pruning with a greedy clique-cover
/// bound. Throws BudgetExceeded past `max_nodes` search nodes.
OracleResult exact_bnb(const Graph& g, std::span<const double> weights,
                       std::uint64_t max_nodes = 50'000'000);

/// GWMIN: repeatedly takes the vertex maximizing w / (residual degree + 1),
/// ties to the smaller id, and deletes it with its neighbors.
NodeSet greedy(const Graph& g, std::span<const double> weights);

}  // namespace mewis
