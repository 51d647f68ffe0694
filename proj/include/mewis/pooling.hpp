#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mewis/entropy.hpp"
#include "mewis/graph.hpp"
#include "mewis/train.hpp"

namespace mewis {

/// Coarsened graph over a selected node set. Node k of `graph` is original
/// node `mapping[k]`; `mapping` is ascending.
struct PooledGraph {
  Graph graph;
  FeatureMatrix features;
  NodeSet mapping;
  /// Whether the selection was a maximal independent set; connectivity of
  /// each component is only guaranteed when it is.
  bool maximal = false;
};

/// Pooled adjacency: selected nodes joined iff a walk of length 2 or 3 links
/// them in `g`. Throws InputError when `selected` is not independent.
PooledGraph reconstruct(const Graph& g, std::span<const NodeId> selected);

/// Entropy weights, scorer training, extraction, reconstruction. Feature
/// rows of the selected nodes are copied unchanged.
PooledGraph mewis_pool(const Graph& g, const FeatureMatrix& x, const TrainConfig& cfg);

enum class ChainStop { DepthReached, SingleNode, NoShrink, Empty };
std::string to_string(ChainStop stop);

struct PoolChain {
  std::vector<PooledGraph> stages;
  ChainStop stop = ChainStop::DepthReached;
};

/// Repeated pooling, feeding each stage's output to the next.
PoolChain pool_chain(const Graph& g, const FeatureMatrix& x, const TrainConfig& cfg, std::size_t depth);

/// Writes `<prefix>.edges`, `<prefix>.features` and `<prefix>.mapping`.
void save_pooled(const PooledGraph& pooled, const std::filesystem::path& prefix);

}  // namespace mewis
