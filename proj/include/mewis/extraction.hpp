#pragma once

#include <span>
#include <vector>

#include "mewis/entropy.hpp"
#include "mewis/graph.hpp"

namespace mewis {

struct ExtractOptions {
  /// Greedily extend the result to a maximal independent set afterwards.
  bool maximalize = false;
  /// Lower the threshold to the current loss after every commitment
  /// (classical conditional expectation). Off: the threshold stays fixed at
  /// the entry loss.
  bool tighten_threshold = false;
};

struct Extraction {
  NodeSet selected;     // ascending ids
  double threshold = 0.0;   // loss of the input scores
  double final_loss = 0.0;  // loss of the working scores after the main loop
  bool resolved_all = false;  // every node selected or rejected by the main loop
  std::size_t main_loop_selected = 0;  // |selected| before maximalization
};

/// Derandomizes fractional scores into an independent set by conditional
/// expectation. Nodes are visited in descending score (ties: ascending id);
/// a node is committed when the loss with it set to 1 and its neighbors set
/// to 0 does not exceed the threshold.
Extraction extract(const Graph& g, const EntropyWeights& w, std::span<const double> z,
                   ExtractOptions options = {});

/// Adds every node with no selected neighbor, by descending weight (ties:
/// ascending id). Returns the sorted result.
NodeSet maximalize(const Graph& g, std::span<const double> weights, NodeSet selected);

bool verify_independent(const Graph& g, std::span<const NodeId> s);
bool is_maximal_independent(const Graph& g, std::span<const NodeId> s);

double set_weight(std::span<const double> weights, std::span<const NodeId> s);

}  // namespace mewis
