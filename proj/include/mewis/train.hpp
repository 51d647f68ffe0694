#pragma once

#include <cstdint>

#include "mewis/entropy.hpp"
#include "mewis/extraction.hpp"
#include "mewis/graph.hpp"
#include "mewis/result.hpp"
#include "mewis/scorer.hpp"

namespace mewis {

struct TrainConfig {
  std::size_t epochs = 200;
  double learning_rate = 1e-3;
  std::uint64_t seed = 1;
  std::size_t extract_every = 10;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  std::size_t layers = 6;
  std::size_t hidden = 32;
  bool degree_feature = false;

  ExtractOptions extraction{.maximalize = true, .tighten_threshold = false};

  /// Throws InputError on an invalid combination.
  void validate() const;
};

/// Defaults for the standalone MIS solver: six layers, maximalized output.
TrainConfig mis_config();
/// Defaults inside the pooling layer: three layers, raw extraction output.
TrainConfig pooling_config();

struct TrainOutcome {
  ScorerModel model;
  SolveResult result;
  std::size_t best_epoch = 0;
  bool best_resolved_all = false;
};

/// Full-batch Adam on pool_loss. Every `extract_every` epochs (and after the
/// last one) the current scores are extracted; the heaviest independent set
/// seen is returned (ties keep the earliest).
TrainOutcome train(const Graph& g, const EntropyWeights& w, const TrainConfig& cfg);

}  // namespace mewis
