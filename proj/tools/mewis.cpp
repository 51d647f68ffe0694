// mewis: command-line front end for the MWIS toolkit.
//
// Exit codes: 0 success, 2 usage or validation failure, 1 internal error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mewis/bench.hpp"
#include "mewis/entropy.hpp"
#include "mewis/errors.hpp"
#include "mewis/graph.hpp"
#include "mewis/oracle.hpp"
#include "mewis/pooling.hpp"
#include "mewis/result.hpp"
#include "mewis/train.hpp"

namespace fs = std::filesystem;
using namespace mewis;

namespace {

struct InputFlags {
  std::string graph;
  std::string features;
  std::string weights;
  std::optional<std::size_t> nodes;
  bool unit = false;
  bool entropy = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--graph", graph, "Edge-list file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--features", features, "Feature file (one row per node)");
    cmd->add_option("--weights", weights, "Weight file (one value per node)");
    cmd->add_option("--nodes", nodes, "Node count (for trailing isolated nodes)");
    auto* u = cmd->add_flag("--unit", unit, "Unit node weights (default)");
    auto* e = cmd->add_flag("--entropy", entropy, "Entropy node weights from --features");
    u->excludes(e);
  }

  Graph load_graph() const { return load_edge_list(graph, nodes); }

  EntropyWeights load_weights_for(const Graph& g) const {
    if (!weights.empty()) {
      if (entropy) throw InputError("--weights and --entropy are mutually exclusive");
      return weights_from_values(mewis::load_weights(weights, g.num_nodes()));
    }
    if (entropy) {
      if (features.empty()) throw InputError("--entropy requires --features");
      const auto x = load_features(features, g.num_nodes());
      return build_weights(g, &x, WeightMode::Entropy);
    }
    return build_weights(g, nullptr, WeightMode::Unit);
  }

  std::string mode() const { return !weights.empty() ? "file" : entropy ? "entropy" : "unit"; }
};

struct TrainFlags {
  TrainConfig cfg;
  bool degree = false;

  void add(CLI::App* cmd, const TrainConfig& defaults) {
    cfg = defaults;
    cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    cmd->add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--lr", cfg.learning_rate, "Adam learning rate")->capture_default_str();
    cmd->add_option("--layers", cfg.layers, "Message-passing layers")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--hidden", cfg.hidden, "Hidden width")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--extract-every", cfg.extract_every, "Epochs between trial extractions")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--maximalize", cfg.extraction.maximalize, "Greedy maximal extension of the extracted set")
        ->capture_default_str();
    cmd->add_flag("--tighten-threshold", cfg.extraction.tighten_threshold,
                  "Lower the extraction threshold after each commitment");
    cmd->add_flag("--degree", degree, "Append the normalised degree as an input column");
  }

  TrainConfig get() const {
    auto c = cfg;
    c.degree_feature = degree;
    c.validate();
    return c;
  }
};

struct OutputFlags {
  std::string out;
  bool json = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--out", out, "Output path");
    cmd->add_flag("--json", json, "Also print the result JSON to stdout");
  }
};

void emit(SolveResult r, const InputFlags& in, const Graph& g, const EntropyWeights& w, const OutputFlags& o) {
  r.graph_name = fs::path(in.graph).stem().string();
  r.config["weights"] = in.mode();
  if (!o.out.empty()) write_result(r, g, w.weights, o.out);
  if (o.out.empty() || o.json) {
    if (!verify_independent(g, r.selected)) throw std::logic_error("refusing to emit a non-independent set");
    std::cout << nlohmann::json(r).dump(2) << '\n';
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

std::vector<std::uint64_t> seed_list(std::size_t count, std::uint64_t first) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = first + i;
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-weight independent sets, entropy weights and graph pooling"};
  app.require_subcommand(1);

  // solve
  InputFlags solve_in;
  TrainFlags solve_train;
  OutputFlags solve_out;
  std::string save_model;
  auto* solve = app.add_subcommand("solve", "Train the neural scorer and extract an independent set");
  solve_in.add(solve);
  solve_train.add(solve, mis_config());
  solve_out.add(solve);
  solve->add_option("--save-model", save_model, "Write the trained scorer checkpoint");

  // greedy
  InputFlags greedy_in;
  OutputFlags greedy_out;
  auto* greedy_cmd = app.add_subcommand("greedy", "GWMIN greedy baseline");
  greedy_in.add(greedy_cmd);
  greedy_out.add(greedy_cmd);

  // exact
  InputFlags exact_in;
  OutputFlags exact_out;
  bool use_bnb = false;
  auto* exact = app.add_subcommand("exact", "Exact MWIS (enumeration up to 20 nodes, or --bnb)");
  exact_in.add(exact);
  exact_out.add(exact);
  exact->add_flag("--bnb", use_bnb, "Use branch-and-bound (up to 64 nodes)");

  // pool
  std::string pool_graph, pool_features, pool_out;
  std::optional<std::size_t> pool_nodes;
  std::size_t pool_depth = 1;
  TrainFlags pool_train;
  auto* pool = app.add_subcommand("pool", "Pool a graph and its features");
  pool->add_option("--graph", pool_graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  pool->add_option("--features", pool_features, "Feature file")->required()->check(CLI::ExistingFile);
  pool->add_option("--nodes", pool_nodes, "Node count (for trailing isolated nodes)");
  pool->add_option("--depth", pool_depth, "Repeated pooling stages")->capture_default_str()->check(CLI::PositiveNumber);
  pool->add_option("--out", pool_out, "Output prefix (writes .edges/.features/.mapping)")->required();
  pool_train.add(pool, pooling_config());

  // gen
  std::size_t gen_n = 16;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate an Erdos-Renyi graph");
  gen->add_option("--n", gen_n, "Node count")->capture_default_str();
  gen->add_option("--p", gen_p, "Edge probability")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output edge list")->required();

  // convert
  std::string conv_in, conv_out, conv_map;
  auto* convert = app.add_subcommand("convert", "Normalize a raw edge list with arbitrary ids");
  convert->add_option("--input", conv_in, "Raw edge list")->required()->check(CLI::ExistingFile);
  convert->add_option("--out", conv_out, "Canonical edge list")->required();
  convert->add_option("--mapping", conv_map, "Mapping file (raw id per new id)");

  // bench
  std::string bench_suite = "random", bench_data = "data", bench_out, bench_md;
  std::size_t bench_seeds = 5;
  std::uint64_t bench_first_seed = 1;
  BenchOptions bench_opts;
  TrainFlags bench_train;
  auto* bench = app.add_subcommand("bench", "Benchmark greedy, MEWIS and exact solvers");
  bench->add_option("--suite", bench_suite, "citation | random")
      ->capture_default_str()
      ->check(CLI::IsMember({"citation", "random"}));
  bench->add_option("--data", bench_data, "Directory with <name>.txt edge lists")->capture_default_str();
  bench->add_option("--seeds", bench_seeds, "MEWIS seeds per instance")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--first-seed", bench_first_seed, "First MEWIS seed")->capture_default_str();
  bench->add_option("--count", bench_opts.count, "Random instances")->capture_default_str();
  bench->add_option("--n", bench_opts.n, "Random instance size")->capture_default_str();
  bench->add_option("--p", bench_opts.p, "Random edge probability")->capture_default_str();
  bench->add_option("--base-seed", bench_opts.base_seed, "Seed of the first random instance")->capture_default_str();
  bench->add_option("--jobs", bench_opts.jobs, "Concurrent cells")->capture_default_str();
  bench->add_option("--out", bench_out, "JSON report path");
  bench->add_option("--markdown", bench_md, "Markdown table path");
  bench_train.add(bench, mis_config());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      const auto cfg = solve_train.get();
      const auto g = solve_in.load_graph();
      const auto w = solve_in.load_weights_for(g);
      auto outcome = train(g, w, cfg);
      if (!save_model.empty()) outcome.model.save(save_model);
      emit(std::move(outcome.result), solve_in, g, w, solve_out);
    } else if (greedy_cmd->parsed()) {
      const auto g = greedy_in.load_graph();
      const auto w = greedy_in.load_weights_for(g);
      emit(solve_greedy(g, w), greedy_in, g, w, greedy_out);
    } else if (exact->parsed()) {
      const auto g = exact_in.load_graph();
      const auto w = exact_in.load_weights_for(g);
      emit(solve_exact(g, w, use_bnb), exact_in, g, w, exact_out);
    } else if (pool->parsed()) {
      const auto cfg = pool_train.get();
      const auto g = load_edge_list(pool_graph, pool_nodes);
      const auto x = load_features(pool_features, g.num_nodes());
      const auto chain = pool_chain(g, x, cfg, pool_depth);
      std::size_t prev = g.num_nodes();
      for (std::size_t k = 0; k < chain.stages.size(); ++k) {
        const auto& st = chain.stages[k];
        const auto prefix = chain.stages.size() == 1 ? fs::path(pool_out) : fs::path(pool_out + "." + std::to_string(k + 1));
        save_pooled(st, prefix);
        const double ratio = prev ? static_cast<double>(st.graph.num_nodes()) / static_cast<double>(prev) : 0.0;
        std::cout << "stage " << k + 1 << ": " << prev << " -> " << st.graph.num_nodes() << " nodes, "
                  << st.graph.num_edges() << " edges, shrink ratio " << ratio
                  << (st.maximal ? "" : " (selection not maximal)") << '\n';
        prev = st.graph.num_nodes();
      }
      std::cout << "stop: " << to_string(chain.stop) << '\n';
    } else if (gen->parsed()) {
      save_edge_list(gen_random(RandomModel::ErdosRenyi, gen_n, gen_p, gen_seed), gen_out);
    } else if (convert->parsed()) {
      std::ifstream f(conv_in);
      std::stringstream buf;
      buf << f.rdbuf();
      const auto conv = convert_edge_list(buf.str());
      save_edge_list(conv.graph, conv_out);
      if (!conv_map.empty()) {
        std::string text;
        for (const auto& l : conv.labels) text += l + '\n';
        write_text(conv_map, text);
      }
      std::cerr << "nodes " << conv.graph.num_nodes() << ", edges " << conv.graph.num_edges() << ", dropped "
                << conv.duplicate_edges << " duplicate and " << conv.self_loops << " self-loop lines\n";
    } else if (bench->parsed()) {
      bench_opts.data_dir = bench_data;
      bench_opts.cfg = bench_train.get();
      bench_opts.seeds = seed_list(bench_seeds, bench_first_seed);
      const auto report = bench_suite == "citation" ? run_citation_bench(bench_opts) : run_random_bench(bench_opts);
      if (!bench_out.empty()) write_text(bench_out, report.dump(2) + "\n");
      const auto md = bench_markdown(report);
      if (!bench_md.empty()) write_text(bench_md, md);
      std::cout << md;
      if (report.contains("missing") && !report["missing"].empty()) {
        std::cerr << "missing datasets:";
        for (const auto& m : report["missing"]) std::cerr << ' ' << m.get<std::string>();
        std::cerr << '\n';
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
