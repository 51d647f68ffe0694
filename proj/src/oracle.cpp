#include "mewis/oracle.hpp"

#include <bit>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mewis/errors.hpp"
#include "mewis/extraction.hpp"

namespace mewis {

namespace {

using Mask = std::uint64_t;

void check_weights(const Graph& g, std::span<const double> weights) {
  if (weights.size() != g.num_nodes()) {
    throw InputError("expected " + std::to_string(g.num_nodes()) + " weights, got " +
                     std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("node weights must be non-negative");
  }
}

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.num_nodes(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  return adj;
}

double mask_weight(Mask m, std::span<const double> weights) {
  double total = 0.0;
  while (m) {
    total += weights[static_cast<std::size_t>(std::countr_zero(m))];
    m &= m - 1;
  }
  return total;
}

NodeSet mask_nodes(Mask m) {
  NodeSet out;
  while (m) {
    out.push_back(static_cast<NodeId>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

// Compares the ascending id lists of two sets lexicographically.
bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (!diff) return false;
  const Mask low = diff & (~diff + 1);
  const Mask above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;  // a continues with the smaller id unless b ends first
  return (a & above) == 0;               // a is a prefix of b
}

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, std::span<const double> weights, std::uint64_t max_nodes)
      : adj_(adjacency_masks(g)), weights_(weights), max_nodes_(max_nodes) {}

  void run(Mask all) { search(all, 0, 0.0); }
  Mask best() const { return best_set_; }
  std::uint64_t explored() const { return explored_; }

 private:
  double clique_cover_bound(Mask cand) const {
    // Each clique contributes its heaviest member.
    std::vector<std::pair<Mask, double>> cliques;  // common neighborhood, max weight
    for (Mask m = cand; m; m &= m - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(m));
      bool placed = false;
      for (auto& [common, wmax] : cliques) {
        if (common & (Mask{1} << v)) {
          common &= adj_[v];
          wmax = std::max(wmax, weights_[v]);
          placed = true;
          break;
        }
      }
      if (!placed) cliques.emplace_back(adj_[v] & cand, weights_[v]);
    }
    double bound = 0.0;
    for (const auto& c : cliques) bound += c.second;
    return bound;
  }

  void search(Mask cand, Mask chosen, double weight) {
    if (++explored_ > max_nodes_) {
      throw BudgetExceeded("branch-and-bound exceeded " + std::to_string(max_nodes_) + " search nodes");
    }
    // Vertices with no candidate neighbor are always taken.
    int best_v = -1;
    int best_deg = 0;
    for (Mask m = cand; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int deg = std::popcount(adj_[static_cast<std::size_t>(v)] & cand);
      if (deg == 0) {
        chosen |= Mask{1} << v;
        weight += weights_[static_cast<std::size_t>(v)];
        cand &= ~(Mask{1} << v);
      } else if (deg > best_deg) {
        best_deg = deg;
        best_v = v;
      }
    }
    if (best_v < 0) {
      if (!have_best_ || weight > best_weight_) {
        have_best_ = true;
        best_weight_ = weight;
        best_set_ = chosen;
      }
      return;
    }
    if (have_best_) {
      const double bound = weight + clique_cover_bound(cand);
      if (bound * (1.0 + 1e-12) <= best_weight_) return;
    }
    const Mask bit = Mask{1} << best_v;
    const auto v = static_cast<std::size_t>(best_v);
    search(cand & ~bit & ~adj_[v], chosen | bit, weight + weights_[v]);
    search(cand & ~bit, chosen, weight);
  }

  std::vector<Mask> adj_;
  std::span<const double> weights_;
  std::uint64_t max_nodes_;
  std::uint64_t explored_ = 0;
  bool have_best_ = false;
  double best_weight_ = 0.0;
  Mask best_set_ = 0;
};

}  // namespace

std::string to_string(OracleMethod m) {
  return m == OracleMethod::Enumeration ? "enumeration" : "branch-and-bound";
}

OracleResult exact_enumerate(const Graph& g, std::span<const double> weights) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxEnumerationNodes) {
    throw InputError("enumeration is limited to " + std::to_string(kMaxEnumerationNodes) + " nodes (got " +
                     std::to_string(n) + ")");
  }
  check_weights(g, weights);
  const auto adj = adjacency_masks(g);
  const Mask end = Mask{1} << n;

  Mask best = 0;
  double best_weight = 0.0;
  for (Mask m = 1; m < end; ++m) {
    bool independent = true;
    for (Mask r = m; r && independent; r &= r - 1) {
      independent = (adj[static_cast<std::size_t>(std::countr_zero(r))] & m) == 0;
    }
    if (!independent) continue;
    const double w = mask_weight(m, weights);
    if (w > best_weight || (w == best_weight && lex_less(m, best))) {
      best = m;
      best_weight = w;
    }
  }
  OracleResult out;
  out.best_set = mask_nodes(best);
  out.best_weight = set_weight(weights, out.best_set);
  out.nodes_explored = end;
  out.method = OracleMethod::Enumeration;
  return out;
}

OracleResult exact_bnb(const Graph& g, std::span<const double> weights, std::uint64_t max_nodes) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxBranchAndBoundNodes) {
    throw InputError("branch-and-bound is limited to " + std::to_string(kMaxBranchAndBoundNodes) + " nodes (got " +
                     std::to_string(n) + ")");
  }
  check_weights(g, weights);
  BranchAndBound bb(g, weights, max_nodes);
  bb.run(n == 64 ? ~Mask{0} : (Mask{1} << n) - 1);
  OracleResult out;
  out.best_set = mask_nodes(bb.best());
  out.best_weight = set_weight(weights, out.best_set);
  out.nodes_explored = bb.explored();
  out.method = OracleMethod::BranchAndBound;
  return out;
}

NodeSet greedy(const Graph& g, std::span<const double> weights) {
  check_weights(g, weights);
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> deg(n);
  std::vector<char> alive(n, 1);
  // Ordered by descending ratio, then ascending id.
  using Key = std::pair<double, NodeId>;
  auto key = [&](NodeId v) { return Key{-weights[v] / static_cast<double>(deg[v] + 1), v}; };
  std::set<Key> queue;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.insert(key(v));
  }

  NodeSet chosen;
  std::vector<NodeId> removed;
  while (!queue.empty()) {
    const NodeId v = queue.begin()->second;
    chosen.push_back(v);
    removed.clear();
    removed.push_back(v);
    for (NodeId u : g.neighbors(v)) {
      if (alive[u]) removed.push_back(u);
    }
    for (NodeId u : removed) {
      queue.erase(key(u));
      alive[u] = 0;
    }
    for (NodeId u : removed) {
      for (NodeId x : g.neighbors(u)) {
        if (!alive[x]) continue;
        queue.erase(key(x));
        --deg[x];
        queue.insert(key(x));
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace mewis
