#include "mewis/result.hpp"

#include <fstream>
#include <stdexcept>

#include "mewis/errors.hpp"
#include "mewis/extraction.hpp"

namespace mewis {

void to_json(nlohmann::json& j, const SolveResult& r) {
  j = nlohmann::json{{"solver", r.solver},
                     {"graph_name", r.graph_name},
                     {"n", r.n},
                     {"m", r.m},
                     {"selected", r.selected},
                     {"size", r.size},
                     {"total_weight", r.total_weight},
                     {"loss_trace", r.loss_trace},
                     {"runtime_ms", r.runtime_ms},
                     {"seed", r.seed},
                     {"config", r.config}};
}

void from_json(const nlohmann::json& j, SolveResult& r) {
  j.at("solver").get_to(r.solver);
  j.at("graph_name").get_to(r.graph_name);
  j.at("n").get_to(r.n);
  j.at("m").get_to(r.m);
  j.at("selected").get_to(r.selected);
  j.at("size").get_to(r.size);
  j.at("total_weight").get_to(r.total_weight);
  j.at("loss_trace").get_to(r.loss_trace);
  j.at("runtime_ms").get_to(r.runtime_ms);
  j.at("seed").get_to(r.seed);
  r.config = j.value("config", nlohmann::json::object());
}

void write_result(const SolveResult& r, const Graph& g, std::span<const double> weights,
                  const std::filesystem::path& path) {
  if (!verify_independent(g, r.selected)) throw std::logic_error(r.solver + " produced a non-independent set");
  if (r.size != r.selected.size()) throw std::logic_error("result size does not match its selection");
  if (set_weight(weights, r.selected) != r.total_weight) {
    throw std::logic_error("result weight does not match its selection");
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << nlohmann::json(r).dump(2) << '\n';
}

SolveResult read_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in).get<SolveResult>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed result file: ") + e.what());
  }
}

}  // namespace mewis
