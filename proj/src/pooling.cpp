#include "mewis/pooling.hpp"

#include <algorithm>
#include <fstream>

#include "mewis/errors.hpp"
#include "mewis/extraction.hpp"

namespace mewis {

PooledGraph reconstruct(const Graph& g, std::span<const NodeId> selected) {
  NodeSet mapping(selected.begin(), selected.end());
  std::sort(mapping.begin(), mapping.end());
  if (std::adjacent_find(mapping.begin(), mapping.end()) != mapping.end()) {
    throw InputError("reconstruct: duplicate node in selection");
  }
  if (!verify_independent(g, mapping)) throw InputError("reconstruct: selection is not an independent set");

  const auto reach = walk_reachability(g, mapping);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < reach.size(); ++a) {
    for (auto b : reach.row(a)) {
      if (a < b) edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
  }
  PooledGraph out;
  out.graph = Graph(mapping.size(), edges);
  out.maximal = is_maximal_independent(g, mapping);
  out.mapping = std::move(mapping);
  return out;
}

PooledGraph mewis_pool(const Graph& g, const FeatureMatrix& x, const TrainConfig& cfg) {
  const auto weights = build_weights(g, &x, WeightMode::Entropy);
  const auto trained = train(g, weights, cfg);
  auto pooled = reconstruct(g, trained.result.selected);
  pooled.features.resize(static_cast<Eigen::Index>(pooled.mapping.size()), x.cols());
  for (std::size_t k = 0; k < pooled.mapping.size(); ++k) {
    pooled.features.row(static_cast<Eigen::Index>(k)) = x.row(pooled.mapping[k]);
  }
  return pooled;
}

std::string to_string(ChainStop stop) {
  switch (stop) {
    case ChainStop::DepthReached: return "depth-reached";
    case ChainStop::SingleNode: return "single-node";
    case ChainStop::NoShrink: return "no-shrink";
    case ChainStop::Empty: return "empty";
  }
  return "unknown";
}

PoolChain pool_chain(const Graph& g, const FeatureMatrix& x, const TrainConfig& cfg, std::size_t depth) {
  if (depth < 1) throw InputError("pool_chain depth must be >= 1");
  PoolChain chain;
  // Stages are referenced by the next iteration; no reallocation allowed.
  chain.stages.reserve(depth);
  const Graph* cur_g = &g;
  const FeatureMatrix* cur_x = &x;
  for (std::size_t step = 0; step < depth; ++step) {
    if (cur_g->num_nodes() == 0) {
      chain.stop = ChainStop::Empty;
      return chain;
    }
    chain.stages.push_back(mewis_pool(*cur_g, *cur_x, cfg));
    const auto& last = chain.stages.back();
    if (last.graph.num_nodes() <= 1) {
      chain.stop = last.graph.num_nodes() == 0 ? ChainStop::Empty : ChainStop::SingleNode;
      return chain;
    }
    if (last.graph.num_nodes() == cur_g->num_nodes()) {
      chain.stop = ChainStop::NoShrink;
      return chain;
    }
    cur_g = &last.graph;
    cur_x = &last.features;
  }
  chain.stop = ChainStop::DepthReached;
  return chain;
}

void save_pooled(const PooledGraph& pooled, const std::filesystem::path& prefix) {
  auto with = [&](const char* ext) {
    auto p = prefix;
    p += ext;
    return p;
  };
  save_edge_list(pooled.graph, with(".edges"));
  save_features(pooled.features, with(".features"));
  std::ofstream out(with(".mapping"));
  if (!out) throw InputError("cannot write mapping for " + prefix.string());
  for (NodeId v : pooled.mapping) out << v << '\n';
}

}  // namespace mewis
