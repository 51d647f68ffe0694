#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mewis/bench.hpp"
#include "mewis/entropy.hpp"
#include "mewis/errors.hpp"
#include "mewis/extraction.hpp"
#include "mewis/graph.hpp"
#include "mewis/loss.hpp"
#include "mewis/oracle.hpp"
#include "mewis/pooling.hpp"
#include "mewis/train.hpp"

namespace py = pybind11;
using namespace mewis;

namespace {

EntropyWeights weights_arg(const Graph& g, const std::optional<std::vector<double>>& weights) {
  if (weights) return weights_from_values(*weights);
  return build_weights(g, nullptr, WeightMode::Unit);
}

TrainConfig make_config(bool pooling, std::size_t epochs, double lr, std::uint64_t seed, std::optional<std::size_t> layers,
                        std::size_t hidden, std::size_t extract_every, std::optional<bool> maximalize) {
  auto cfg = pooling ? pooling_config() : mis_config();
  cfg.epochs = epochs;
  cfg.learning_rate = lr;
  cfg.seed = seed;
  if (layers) cfg.layers = *layers;
  cfg.hidden = hidden;
  cfg.extract_every = extract_every;
  if (maximalize) cfg.extraction.maximalize = *maximalize;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximum-weight independent sets, entropy weights and graph pooling";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }), py::arg("n"),
           py::arg("edges") = std::vector<Edge>{})
      .def_property_readonly("n", &Graph::num_nodes)
      .def_property_readonly("m", &Graph::num_edges)
      .def_property_readonly("edges", &Graph::edges)
      .def("neighbors", [](const Graph& g, NodeId v) {
        if (v >= g.num_nodes()) throw py::index_error("node out of range");
        auto nb = g.neighbors(v);
        return std::vector<NodeId>(nb.begin(), nb.end());
      })
      .def("degree", &Graph::degree)
      .def("num_components", &Graph::num_components)
      .def("dense_adjacency", &Graph::dense_adjacency)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_nodes()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("load_edge_list", &load_edge_list, py::arg("path"), py::arg("n") = std::nullopt);
  m.def("load_features", &load_features, py::arg("path"), py::arg("n"));
  m.def("gen_random", [](std::size_t n, double p, std::uint64_t seed) {
    return gen_random(RandomModel::ErdosRenyi, n, p, seed);
  }, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("walk_reachability", [](const Graph& g, const NodeSet& subset) {
    return walk_reachability(g, subset).to_dense();
  }, py::arg("graph"), py::arg("subset"));

  py::class_<EntropyWeights>(m, "EntropyWeights")
      .def_readonly("delta", &EntropyWeights::delta)
      .def_readonly("prob", &EntropyWeights::prob)
      .def_readonly("entropy", &EntropyWeights::entropy)
      .def_readonly("weights", &EntropyWeights::weights)
      .def_readonly("gamma", &EntropyWeights::gamma);

  m.def("local_variation", &local_variation, py::arg("graph"), py::arg("features"));
  m.def("build_weights", [](const Graph& g, std::optional<FeatureMatrix> x) {
    return x ? build_weights(g, &*x, WeightMode::Entropy) : build_weights(g, nullptr, WeightMode::Unit);
  }, py::arg("graph"), py::arg("features") = std::nullopt,
     "Entropy weights when features are given, unit weights otherwise.");

  m.def("pool_loss", [](const Graph& g, const std::vector<double>& weights, const std::vector<double>& z) {
    return pool_loss(g, weights, sum_in_order(weights), z);
  }, py::arg("graph"), py::arg("weights"), py::arg("z"));

  py::class_<Extraction>(m, "Extraction")
      .def_readonly("selected", &Extraction::selected)
      .def_readonly("threshold", &Extraction::threshold)
      .def_readonly("final_loss", &Extraction::final_loss)
      .def_readonly("resolved_all", &Extraction::resolved_all);
  m.def("extract", [](const Graph& g, const std::vector<double>& z, std::optional<std::vector<double>> weights,
                      bool maximalize) {
    return extract(g, weights_arg(g, weights), z, {.maximalize = maximalize, .tighten_threshold = false});
  }, py::arg("graph"), py::arg("z"), py::arg("weights") = std::nullopt, py::arg("maximalize") = false);

  m.def("verify_independent", [](const Graph& g, const NodeSet& s) { return verify_independent(g, s); });
  m.def("greedy", [](const Graph& g, std::optional<std::vector<double>> weights) {
    return greedy(g, weights_arg(g, weights).weights);
  }, py::arg("graph"), py::arg("weights") = std::nullopt);

  auto oracle = [](bool bnb) {
    return [bnb](const Graph& g, std::optional<std::vector<double>> weights) {
      const auto w = weights_arg(g, weights);
      const auto r = bnb ? exact_bnb(g, w.weights) : exact_enumerate(g, w.weights);
      return py::make_tuple(r.best_set, r.best_weight);
    };
  };
  m.def("exact_enumerate", oracle(false), py::arg("graph"), py::arg("weights") = std::nullopt,
        "Returns (best_set, best_weight).");
  m.def("exact_bnb", oracle(true), py::arg("graph"), py::arg("weights") = std::nullopt,
        "Returns (best_set, best_weight).");

  m.def("solve", [](const Graph& g, std::optional<std::vector<double>> weights, std::size_t epochs, double lr,
                    std::uint64_t seed, std::size_t layers, std::size_t hidden, std::size_t extract_every,
                    bool maximalize) {
    const auto w = weights_arg(g, weights);
    auto out = train(g, w, make_config(false, epochs, lr, seed, layers, hidden, extract_every, maximalize));
    py::dict d;
    d["selected"] = out.result.selected;
    d["size"] = out.result.size;
    d["total_weight"] = out.result.total_weight;
    d["loss_trace"] = out.result.loss_trace;
    d["best_epoch"] = out.best_epoch;
    return d;
  }, py::arg("graph"), py::arg("weights") = std::nullopt, py::arg("epochs") = 200, py::arg("lr") = 1e-3,
     py::arg("seed") = 1, py::arg("layers") = 6, py::arg("hidden") = 32, py::arg("extract_every") = 10,
     py::arg("maximalize") = true);

  py::class_<PooledGraph>(m, "PooledGraph")
      .def_readonly("graph", &PooledGraph::graph)
      .def_readonly("features", &PooledGraph::features)
      .def_readonly("mapping", &PooledGraph::mapping)
      .def_readonly("maximal", &PooledGraph::maximal);
  m.def("reconstruct", [](const Graph& g, const NodeSet& s) { return reconstruct(g, s); });
  m.def("mewis_pool", [](const Graph& g, const FeatureMatrix& x, std::size_t epochs, double lr, std::uint64_t seed,
                         std::optional<std::size_t> layers, std::size_t hidden) {
    return mewis_pool(g, x, make_config(true, epochs, lr, seed, layers, hidden, 10, std::nullopt));
  }, py::arg("graph"), py::arg("features"), py::arg("epochs") = 200, py::arg("lr") = 1e-3, py::arg("seed") = 1,
     py::arg("layers") = std::nullopt, py::arg("hidden") = 32);
}
