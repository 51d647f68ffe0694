#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mewis {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;
using NodeSet = std::vector<NodeId>;

/// Undirected simple graph in compressed adjacency form.
///
/// Edges are stored canonically (u < v, sorted, unique); neighbor lists are
/// sorted. Instances are immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arbitrary edge list. Reversed and repeated pairs
  /// collapse to one undirected edge. Throws InputError on self-loops or
  /// endpoints >= n.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;

  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge list: u < v, lexicographically sorted.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Dense 0/1 adjacency, for small-graph reference computations.
  Eigen::MatrixXd dense_adjacency() const;

  /// Subgraph induced by `nodes` (re-indexed in the given order).
  Graph induced(std::span<const NodeId> nodes) const;

  /// Connected components as a label per node, labels numbered 0..k-1 in
  /// order of first appearance.
  std::vector<std::uint32_t> component_labels() const;
  std::size_t num_components() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_nodes() == b.num_nodes() && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Edge> edges_;
};

/// Row i is the feature vector of node i.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Reads whitespace-separated "u v" lines; `#` starts a comment. The node
/// count is max id + 1 unless `n_override` is given.
Graph load_edge_list(const std::filesystem::path& path,
                     std::optional<std::size_t> n_override = std::nullopt);
Graph parse_edge_list(std::string_view text,
                      std::optional<std::size_t> n_override = std::nullopt);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

/// One whitespace-separated row per node, exactly `n` non-empty lines.
FeatureMatrix load_features(const std::filesystem::path& path, std::size_t n);
FeatureMatrix parse_features(std::string_view text, std::size_t n);
void save_features(const FeatureMatrix& x, const std::filesystem::path& path);

/// One real per non-empty line.
std::vector<double> load_weights(const std::filesystem::path& path, std::size_t n);

enum class RandomModel { ErdosRenyi };

/// Includes each unordered pair independently with probability p.
/// Deterministic in (n, p, seed).
Graph gen_random(RandomModel model, std::size_t n, double p, std::uint64_t seed);

/// Connected Erdos-Renyi sample: retries successive seeds until connected.
Graph gen_random_connected(std::size_t n, double p, std::uint64_t seed);

/// Pairs of subset members joined by a walk of length 2 or 3 in the full
/// graph, excluding the diagonal. Stored sparsely; indices refer to positions
/// in the subset.
class Reachability {
 public:
  Reachability() = default;
  explicit Reachability(std::vector<std::vector<std::uint32_t>> rows) : rows_(std::move(rows)) {}

  std::size_t size() const noexcept { return rows_.size(); }
  bool operator()(std::size_t a, std::size_t b) const;
  std::span<const std::uint32_t> row(std::size_t a) const { return rows_[a]; }
  std::size_t count() const;

  Eigen::MatrixXd to_dense() const;

 private:
  std::vector<std::vector<std::uint32_t>> rows_;
};

/// Computed by neighbor-set traversal; never forms matrix powers.
Reachability walk_reachability(const Graph& g, std::span<const NodeId> subset);

}  // namespace mewis
