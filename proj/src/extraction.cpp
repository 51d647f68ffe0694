#include "mewis/extraction.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mewis/errors.hpp"
#include "mewis/loss.hpp"

namespace mewis {

namespace {

enum class Status : unsigned char { Unresolved, Selected, Rejected };

void check_ids(const Graph& g, std::span<const NodeId> s) {
  for (NodeId v : s) {
    if (v >= g.num_nodes()) throw InputError("node id " + std::to_string(v) + " out of range");
  }
}

}  // namespace

Extraction extract(const Graph& g, const EntropyWeights& w, std::span<const double> z_in,
                   ExtractOptions options) {
  const std::size_t n = g.num_nodes();
  if (z_in.size() != n || w.size() != n) {
    throw InputError("extract: scores/weights sized " + std::to_string(z_in.size()) + "/" +
                     std::to_string(w.size()) + " for a graph of " + std::to_string(n) + " nodes");
  }
  for (double v : z_in) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("extract: scores must lie in [0, 1]");
  }

  std::vector<double> z(z_in.begin(), z_in.end());
  const auto& weight = w.weights;
  double current = pool_loss(g, w, z);

  Extraction out;
  out.threshold = current;
  double threshold = current;

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return z[a] > z[b]; });

  std::vector<Status> status(n, Status::Unresolved);
  // Trial values for the nodes touched by the current candidate.
  std::vector<std::uint32_t> touched(n, 0);
  std::vector<double> trial(n, 0.0);
  std::uint32_t stamp = 0;

  for (NodeId v : order) {
    if (status[v] != Status::Unresolved) continue;
    ++stamp;
    touched[v] = stamp;
    trial[v] = 1.0;
    for (NodeId u : g.neighbors(v)) {
      touched[u] = stamp;
      trial[u] = 0.0;
    }

    // Only terms touching v or its neighbors change.
    auto change_at = [&](NodeId u) {
      const double su = trial[u];
      double d = -weight[u] * (su - z[u]);
      for (NodeId x : g.neighbors(u)) {
        if (touched[x] != stamp) {
          d += (su - z[u]) * z[x];
        } else if (u < x) {
          d += su * trial[x] - z[u] * z[x];
        }
      }
      return d;
    };
    double delta = change_at(v);
    for (NodeId u : g.neighbors(v)) delta += change_at(u);

    const double candidate = current + delta;
    if (candidate <= threshold) {
      current = candidate;
      if (options.tighten_threshold) threshold = candidate;
      status[v] = Status::Selected;
      z[v] = 1.0;
      for (NodeId u : g.neighbors(v)) {
        status[u] = Status::Rejected;
        z[u] = 0.0;
      }
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    if (status[v] == Status::Selected) out.selected.push_back(v);
  }
  out.final_loss = current;
  out.resolved_all = std::none_of(status.begin(), status.end(), [](Status s) { return s == Status::Unresolved; });
  out.main_loop_selected = out.selected.size();
  if (options.maximalize) out.selected = maximalize(g, weight, std::move(out.selected));
  return out;
}

NodeSet maximalize(const Graph& g, std::span<const double> weights, NodeSet selected) {
  const std::size_t n = g.num_nodes();
  check_ids(g, selected);
  std::vector<char> in(n, 0), blocked(n, 0);
  for (NodeId v : selected) {
    in[v] = 1;
    for (NodeId u : g.neighbors(v)) blocked[u] = 1;
  }
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < n; ++v) {
    if (!in[v] && !blocked[v]) candidates.push_back(v);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](NodeId a, NodeId b) { return weights[a] > weights[b]; });
  for (NodeId v : candidates) {
    if (blocked[v]) continue;
    in[v] = 1;
    selected.push_back(v);
    for (NodeId u : g.neighbors(v)) blocked[u] = 1;
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

bool verify_independent(const Graph& g, std::span<const NodeId> s) {
  check_ids(g, s);
  std::vector<char> in(g.num_nodes(), 0);
  for (NodeId v : s) in[v] = 1;
  for (NodeId v : s) {
    for (NodeId u : g.neighbors(v)) {
      if (in[u]) return false;
    }
  }
  return true;
}

bool is_maximal_independent(const Graph& g, std::span<const NodeId> s) {
  if (!verify_independent(g, s)) return false;
  std::vector<char> covered(g.num_nodes(), 0);
  for (NodeId v : s) {
    covered[v] = 1;
    for (NodeId u : g.neighbors(v)) covered[u] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

double set_weight(std::span<const double> weights, std::span<const NodeId> s) {
  std::vector<NodeId> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (NodeId v : sorted) total += weights[v];
  return total;
}

}  // namespace mewis
