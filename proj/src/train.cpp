#include "mewis/train.hpp"

#include <chrono>

#include "mewis/errors.hpp"

namespace mewis {

void TrainConfig::validate() const {
  if (epochs < 1) throw InputError("epochs must be >= 1");
  if (extract_every < 1) throw InputError("extract_every must be >= 1");
  if (!(learning_rate > 0.0)) throw InputError("learning rate must be positive");
  if (layers < 1 || hidden < 1) throw InputError("layers and hidden width must be >= 1");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0 && adam_eps > 0.0)) {
    throw InputError("invalid Adam constants");
  }
}

TrainConfig mis_config() { return TrainConfig{}; }

TrainConfig pooling_config() {
  TrainConfig cfg;
  cfg.layers = 3;
  cfg.extraction.maximalize = false;
  return cfg;
}

TrainOutcome train(const Graph& g, const EntropyWeights& w, const TrainConfig& cfg) {
  cfg.validate();
  if (w.size() != g.num_nodes()) throw InputError("weights do not match graph size");
  const auto started = std::chrono::steady_clock::now();

  const Matrix inputs = node_inputs(g, w, cfg.degree_feature);
  ModelDims dims{static_cast<std::size_t>(inputs.cols()), cfg.hidden, cfg.layers};
  TrainOutcome out{ScorerModel::initialize(dims, cfg.seed), {}, 0, false};
  Adam adam(out.model.params().size(), cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);

  auto& result = out.result;
  result.solver = "mewis";
  result.n = g.num_nodes();
  result.m = g.num_edges();
  result.seed = cfg.seed;
  result.loss_trace.reserve(cfg.epochs);

  bool have_best = false;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto lg = loss_gradient(out.model, g, w, inputs);
    result.loss_trace.push_back(lg.loss);
    adam.step(out.model.params(), lg.grad);

    if (epoch % cfg.extract_every == 0 || epoch == cfg.epochs) {
      const auto z = forward(out.model, g, inputs);
      auto ex = extract(g, w, z, cfg.extraction);
      const double weight = set_weight(w.weights, ex.selected);
      if (!have_best || weight > result.total_weight) {
        have_best = true;
        result.total_weight = weight;
        result.selected = std::move(ex.selected);
        out.best_epoch = epoch;
        out.best_resolved_all = ex.resolved_all;
      }
    }
  }
  result.size = result.selected.size();
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  result.config = {{"epochs", cfg.epochs},
                   {"lr", cfg.learning_rate},
                   {"layers", cfg.layers},
                   {"hidden", cfg.hidden},
                   {"extract_every", cfg.extract_every},
                   {"degree_feature", cfg.degree_feature},
                   {"maximalize", cfg.extraction.maximalize},
                   {"tighten_threshold", cfg.extraction.tighten_threshold},
                   {"best_epoch", out.best_epoch}};
  return out;
}

}  // namespace mewis
