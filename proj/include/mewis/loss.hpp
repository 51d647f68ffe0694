#pragma once

#include <span>
#include <vector>

#include "mewis/entropy.hpp"
#include "mewis/graph.hpp"

namespace mewis {

/// gamma - sum_i w_i z_i + sum_{(i,j) in E} z_i z_j, each undirected edge
/// counted once.
double pool_loss(const Graph& g, const EntropyWeights& w, std::span<const double> z);
double pool_loss(const Graph& g, std::span<const double> weights, double gamma, std::span<const double> z);

/// d loss / d z_i = -w_i + sum_{j in N(i)} z_j.
std::vector<double> pool_loss_grad_z(const Graph& g, std::span<const double> weights,
                                     std::span<const double> z);

}  // namespace mewis
