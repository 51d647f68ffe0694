#include "mewis/loss.hpp"

#include <string>

#include "mewis/errors.hpp"

namespace mewis {

namespace {

void check_sizes(const Graph& g, std::size_t weights, std::size_t z) {
  if (weights != g.num_nodes() || z != g.num_nodes()) {
    throw InputError("pool_loss: expected " + std::to_string(g.num_nodes()) + " weights and scores, got " +
                     std::to_string(weights) + " and " + std::to_string(z));
  }
}

}  // namespace

double pool_loss(const Graph& g, std::span<const double> weights, double gamma, std::span<const double> z) {
  check_sizes(g, weights.size(), z.size());
  double linear = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) linear += weights[i] * z[i];
  double quadratic = 0.0;
  for (auto [u, v] : g.edges()) quadratic += z[u] * z[v];
  return gamma - linear + quadratic;
}

double pool_loss(const Graph& g, const EntropyWeights& w, std::span<const double> z) {
  return pool_loss(g, w.weights, w.gamma, z);
}

std::vector<double> pool_loss_grad_z(const Graph& g, std::span<const double> weights,
                                     std::span<const double> z) {
  check_sizes(g, weights.size(), z.size());
  std::vector<double> grad(z.size());
  for (NodeId i = 0; i < z.size(); ++i) {
    double acc = -weights[i];
    for (NodeId j : g.neighbors(i)) acc += z[j];
    grad[i] = acc;
  }
  return grad;
}

}  // namespace mewis
