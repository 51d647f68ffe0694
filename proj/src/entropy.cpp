#include "mewis/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mewis/errors.hpp"

namespace mewis {

std::vector<double> local_variation(const Graph& g, const FeatureMatrix& x) {
  const std::size_t n = g.num_nodes();
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw InputError("feature rows (" + std::to_string(x.rows()) + ") do not match node count (" +
                     std::to_string(n) + ")");
  }
  // The per-dimension norms nest into a single norm over all neighbor
  // differences.
  std::vector<double> delta(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    double acc = 0.0;
    for (NodeId j : g.neighbors(i)) acc += (x.row(j) - x.row(i)).squaredNorm();
    delta[i] = std::sqrt(acc);
  }
  return delta;
}

std::vector<double> node_probabilities(std::span<const double> delta) {
  if (delta.empty()) throw InputError("node_probabilities: empty input");
  for (double d : delta) {
    if (!std::isfinite(d)) throw InputError("node_probabilities: non-finite local variation");
  }
  const double shift = -*std::min_element(delta.begin(), delta.end());
  std::vector<double> p(delta.size());
  double total = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    p[i] = std::exp(-delta[i] - shift);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> node_entropies(std::span<const double> prob) {
  std::vector<double> h(prob.size());
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const double p = prob[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("node_entropies: probability " + std::to_string(p) + " outside [0, 1]");
    }
    h[i] = p > 0.0 ? -p * std::log(p) : 0.0;
  }
  return h;
}

double sum_in_order(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

EntropyWeights build_weights(const Graph& g, const FeatureMatrix* x, WeightMode mode) {
  const std::size_t n = g.num_nodes();
  EntropyWeights out;
  out.mode = mode;
  if (mode == WeightMode::Entropy) {
    if (x == nullptr) throw InputError("entropy weights require a feature matrix");
    out.delta = local_variation(g, *x);
    if (n > 0) out.prob = node_probabilities(out.delta);
    out.entropy = node_entropies(out.prob);
    out.weights = out.entropy;
  } else {
    out.delta.assign(n, 0.0);
    out.prob.assign(n, n ? 1.0 / static_cast<double>(n) : 0.0);
    out.entropy.assign(n, n ? std::log(static_cast<double>(n)) / static_cast<double>(n) : 0.0);
    out.weights.assign(n, 1.0);
  }
  out.gamma = sum_in_order(out.weights);
  return out;
}

EntropyWeights weights_from_values(std::vector<double> values) {
  for (double w : values) {
    if (!std::isfinite(w) || w < 0.0) throw InputError("node weights must be finite and non-negative");
  }
  EntropyWeights out;
  const std::size_t n = values.size();
  out.mode = WeightMode::Unit;
  out.delta.assign(n, 0.0);
  out.prob.assign(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  out.entropy.assign(n, n ? std::log(static_cast<double>(n)) / static_cast<double>(n) : 0.0);
  out.weights = std::move(values);
  out.gamma = sum_in_order(out.weights);
  return out;
}

}  // namespace mewis
