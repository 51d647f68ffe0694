// Shared fixtures and independent reference computations for the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mewis/entropy.hpp"
#include "mewis/graph.hpp"
#include "mewis/loss.hpp"
#include "mewis/scorer.hpp"

namespace mewis::testing {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

inline Graph two_triangles() {
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return Graph(6, e);
}

/// Dense (1 - I) .* clip(A^2 + A^3) restricted to `subset`.
inline Eigen::MatrixXd dense_pooled_adjacency(const Graph& g, const std::vector<NodeId>& subset) {
  const Eigen::MatrixXd a = g.dense_adjacency();
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd walks = a2 + a2 * a;
  const auto k = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      if (i != j && walks(subset[i], subset[j]) > 0.5) out(i, j) = 1.0;
  return out;
}

/// Independence by exhaustive pair scan over the dense adjacency.
inline bool independent_by_pairs(const Graph& g, const std::vector<NodeId>& s) {
  const auto a = g.dense_adjacency();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (a(s[i], s[j]) > 0.5) return false;
  return true;
}

inline std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = u(rng);
  return w;
}

inline std::vector<double> random_scores(std::size_t n, std::uint64_t seed) { return random_weights(n, seed ^ 0x5eedULL); }

/// All graphs on n labelled nodes, as edge bitmasks over the pair list.
template <typename F>
void for_each_graph(std::size_t n, F&& f) {
  std::vector<Edge> pairs;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<Edge> edges;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    edges.clear();
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) edges.push_back(pairs[b]);
    f(Graph(n, edges));
  }
}

/// Every maximal independent set of g (n <= 20), by subset enumeration.
inline std::vector<std::vector<NodeId>> maximal_independent_sets(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  std::vector<std::vector<NodeId>> out;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    bool ok = true;
    std::uint32_t covered = m;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (m >> v & 1) {
        ok = (adj[v] & m) == 0;
        covered |= adj[v];
      }
    }
    if (!ok || covered != (1u << n) - 1) continue;
    std::vector<NodeId> s;
    for (NodeId v = 0; v < n; ++v)
      if (m >> v & 1) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<NodeId> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<NodeId> p(n);
  for (NodeId i = 0; i < n; ++i) p[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Relabels node v as perm[v].
inline Graph permute(const Graph& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
  return Graph(g.num_nodes(), e);
}


/// Scorer with every parameter drawn from N(0, scale^2), eps included.
inline ScorerModel random_model(ModelDims dims, std::uint64_t seed, double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> p(ScorerModel::parameter_count(dims));
  for (auto& v : p) v = d(rng);
  return ScorerModel(dims, std::move(p));
}

inline Matrix random_inputs(std::size_t n, std::size_t f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  return x;
}

struct ReferenceForward {
  std::vector<double> z;
  /// Distance of the nearest ReLU or clamp argument from its kink.
  double kink_margin = 0.0;
};

/// Loop-by-loop evaluation of the scorer, independent of the library's
/// matrix code: mean neighbour aggregation, two ReLU stages per layer, a
/// logistic head clamped to [kScoreFloor, kScoreCeil].
inline ReferenceForward reference_forward(const ScorerModel& model, const Graph& g, const Matrix& x) {
  const auto& d = model.dims();
  const auto p = model.params();
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<double>> h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < d.inputs; ++f) h[i].push_back(x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)));
  double margin = 1e300;
  for (std::size_t k = 0; k < d.layers; ++k) {
    const auto o = model.layer_offsets(k);
    std::vector<std::vector<double>> next(n, std::vector<double>(d.hidden));
    for (NodeId i = 0; i < n; ++i) {
      std::vector<double> agg(o.in);
      const double c = g.degree(i) > 0 ? 1.0 / static_cast<double>(g.degree(i)) : 1.0;
      for (std::size_t f = 0; f < o.in; ++f) {
        double nb = 0.0;
        for (NodeId j : g.neighbors(i)) nb += h[j][f];
        agg[f] = (1.0 + p[o.eps]) * h[i][f] + c * nb;
      }
      std::vector<double> a1(d.hidden);
      for (std::size_t c1 = 0; c1 < d.hidden; ++c1) {
        double s = p[o.b1 + c1];
        for (std::size_t f = 0; f < o.in; ++f) s += agg[f] * p[o.w1 + f * d.hidden + c1];
        margin = std::min(margin, std::abs(s));
        a1[c1] = std::max(0.0, s);
      }
      for (std::size_t c2 = 0; c2 < d.hidden; ++c2) {
        double s = p[o.b2 + c2];
        for (std::size_t c1 = 0; c1 < d.hidden; ++c1) s += a1[c1] * p[o.w2 + c1 * d.hidden + c2];
        margin = std::min(margin, std::abs(s));
        next[i][c2] = std::max(0.0, s);
      }
    }
    h = std::move(next);
  }
  ReferenceForward out;
  const auto head = model.head_offset();
  const double edge = std::log(kScoreCeil / (1.0 - kScoreCeil));
  for (std::size_t i = 0; i < n; ++i) {
    double s = p[head + d.hidden];
    for (std::size_t c = 0; c < d.hidden; ++c) s += h[i][c] * p[head + c];
    margin = std::min(margin, std::abs(std::abs(s) - edge));
    out.z.push_back(std::clamp(1.0 / (1.0 + std::exp(-s)), kScoreFloor, kScoreCeil));
  }
  out.kink_margin = margin;
  return out;
}

struct GradientCheck {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_rel = 0.0;
};

/// Central differences against loss_gradient for every parameter.
/// A parameter passes when the relative error is below `rel` or the absolute
/// error is below `abs_floor`.
inline GradientCheck check_gradient(const ScorerModel& model, const Graph& g, const EntropyWeights& w,
                                    const Matrix& x, double rel = 1e-4, double abs_floor = 1e-8,
                                    double h = 1e-5) {
  const auto analytic = loss_gradient(model, g, w, x).grad;
  ScorerModel probe = model;
  auto p = probe.params();
  GradientCheck out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double keep = p[i];
    p[i] = keep + h;
    const double up = pool_loss(g, w, forward(probe, g, x));
    p[i] = keep - h;
    const double down = pool_loss(g, w, forward(probe, g, x));
    p[i] = keep;
    const double numeric = (up - down) / (2 * h);
    const double err = std::abs(numeric - analytic[i]);
    const double scale = std::max(std::abs(numeric), std::abs(analytic[i]));
    const double r = scale > 0 ? err / scale : 0.0;
    ++out.checked;
    if (scale > abs_floor) out.worst_rel = std::max(out.worst_rel, r);
    if (err > abs_floor && r > rel) ++out.failed;
  }
  return out;
}

}  // namespace mewis::testing
