#pragma once

#include <span>
#include <vector>

#include "mewis/graph.hpp"

namespace mewis {

enum class WeightMode { Entropy, Unit };

/// Per-node smoothness statistics and the resulting MWIS weights.
struct EntropyWeights {
  std::vector<double> delta;    // local variation
  std::vector<double> prob;     // softmax of -delta
  std::vector<double> entropy;  // -p ln p
  std::vector<double> weights;  // entropy, or 1 in unit mode
  double gamma = 0.0;           // sum of weights in node order
  WeightMode mode = WeightMode::Entropy;

  std::size_t size() const noexcept { return weights.size(); }
};

/// sqrt(sum_{j in N(i)} ||x_j - x_i||^2); zero on isolated nodes.
std::vector<double> local_variation(const Graph& g, const FeatureMatrix& x);

/// Max-shifted softmax of -delta.
std::vector<double> node_probabilities(std::span<const double> delta);

/// -p ln p with 0 ln 0 = 0.
std::vector<double> node_entropies(std::span<const double> prob);

EntropyWeights build_weights(const Graph& g, const FeatureMatrix* x, WeightMode mode);

/// Wraps caller-provided weights (e.g. from a weight file) so they can flow
/// through the same solvers.
EntropyWeights weights_from_values(std::vector<double> values);

double sum_in_order(std::span<const double> values);

}  // namespace mewis
