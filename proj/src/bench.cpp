#include "mewis/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "mewis/errors.hpp"
#include "mewis/extraction.hpp"
#include "mewis/loss.hpp"
#include "mewis/oracle.hpp"

namespace mewis {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SolveResult make_result(std::string solver, const Graph& g, const EntropyWeights& w, NodeSet selected,
                        double runtime_ms) {
  SolveResult r;
  r.solver = std::move(solver);
  r.n = g.num_nodes();
  r.m = g.num_edges();
  r.selected = std::move(selected);
  r.size = r.selected.size();
  r.total_weight = set_weight(w.weights, r.selected);
  r.runtime_ms = runtime_ms;
  return r;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

nlohmann::json protocol(const BenchOptions& opts) {
  return {{"seeds", opts.seeds},
          {"epochs", opts.cfg.epochs},
          {"lr", opts.cfg.learning_rate},
          {"layers", opts.cfg.layers},
          {"hidden", opts.cfg.hidden},
          {"extract_every", opts.cfg.extract_every},
          {"degree_feature", opts.cfg.degree_feature},
          {"maximalize", opts.cfg.extraction.maximalize},
          {"headline", "best of seeds by total weight"},
          {"restarts", 0}};
}

}  // namespace

SolveResult solve_mewis(const Graph& g, const EntropyWeights& w, const TrainConfig& cfg) {
  return train(g, w, cfg).result;
}

SolveResult solve_greedy(const Graph& g, const EntropyWeights& w) {
  const auto start = Clock::now();
  auto set = greedy(g, w.weights);
  return make_result("greedy", g, w, std::move(set), elapsed_ms(start));
}

SolveResult solve_exact(const Graph& g, const EntropyWeights& w, bool branch_and_bound) {
  const auto start = Clock::now();
  auto res = branch_and_bound ? exact_bnb(g, w.weights) : exact_enumerate(g, w.weights);
  auto r = make_result(branch_and_bound ? "exact-bnb" : "exact-enumerate", g, w, std::move(res.best_set),
                       elapsed_ms(start));
  r.config = {{"nodes_explored", res.nodes_explored}, {"method", to_string(res.method)}};
  return r;
}

SolveResult solve_mewis_best_of(const Graph& g, const EntropyWeights& w, TrainConfig cfg,
                                std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw InputError("at least one seed is required");
  SolveResult best;
  bool have = false;
  double total_ms = 0.0;
  for (auto seed : seeds) {
    cfg.seed = seed;
    auto r = solve_mewis(g, w, cfg);
    total_ms += r.runtime_ms;
    if (!have || r.total_weight > best.total_weight) {
      best = std::move(r);
      have = true;
    }
  }
  best.runtime_ms = total_ms;
  best.config["seeds"] = std::vector<std::uint64_t>(seeds.begin(), seeds.end());
  return best;
}

Converted convert_edge_list(std::string_view text) {
  Converted out;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<NodeId>(out.labels.size()));
    if (inserted) out.labels.push_back(label);
    return it->second;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto cut = line.find_first_of("#%"); cut != std::string::npos) line.resize(cut);
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw InputError("line " + std::to_string(lineno) + ": expected two node labels");
    const NodeId u = id_of(a);
    const NodeId v = id_of(b);
    if (u == v) {
      ++out.self_loops;
      continue;
    }
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      ++out.duplicate_edges;
      continue;
    }
    edges.emplace_back(u, v);
  }
  out.graph = Graph(out.labels.size(), edges);
  return out;
}

double time_forward_ms(const Graph& g, const EntropyWeights& w, const TrainConfig& cfg) {
  const Matrix inputs = node_inputs(g, w, cfg.degree_feature);
  const auto model =
      ScorerModel::initialize({static_cast<std::size_t>(inputs.cols()), cfg.hidden, cfg.layers}, cfg.seed);
  const auto start = Clock::now();
  const auto z = forward(model, g, inputs);
  volatile double loss = pool_loss(g, w, z);
  (void)loss;
  return elapsed_ms(start);
}

nlohmann::json run_citation_bench(const BenchOptions& opts) {
  nlohmann::json report;
  report["suite"] = "citation";
  report["protocol"] = protocol(opts);
  report["datasets"] = nlohmann::json::array();
  report["missing"] = nlohmann::json::array();

  for (const auto& name : opts.datasets) {
    const auto path = opts.data_dir / (name + ".txt");
    if (!std::filesystem::exists(path)) {
      report["missing"].push_back(name);
      continue;
    }
    const auto g = load_edge_list(path);
    const auto w = build_weights(g, nullptr, WeightMode::Unit);

    auto greedy_r = solve_greedy(g, w);
    std::vector<SolveResult> runs(opts.seeds.size());
    parallel_for(opts.seeds.size(), opts.jobs, [&](std::size_t i) {
      auto cfg = opts.cfg;
      cfg.seed = opts.seeds[i];
      runs[i] = solve_mewis(g, w, cfg);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
      if (runs[i].total_weight > runs[best].total_weight) best = i;
    }
    nlohmann::json entry;
    entry["name"] = name;
    entry["n"] = g.num_nodes();
    entry["m"] = g.num_edges();
    entry["greedy"] = {{"size", greedy_r.size}, {"runtime_ms", greedy_r.runtime_ms}};
    entry["mewis"] = nlohmann::json::array();
    bool valid = verify_independent(g, greedy_r.selected);
    for (const auto& r : runs) {
      valid = valid && verify_independent(g, r.selected);
      entry["mewis"].push_back({{"seed", r.seed}, {"size", r.size}, {"runtime_ms", r.runtime_ms}});
    }
    entry["mewis_best"] = runs.empty() ? 0 : runs[best].size;
    entry["forward_ms"] = time_forward_ms(g, w, opts.cfg);
    entry["valid"] = valid;
    report["datasets"].push_back(entry);
  }
  return report;
}

nlohmann::json run_random_bench(const BenchOptions& opts) {
  nlohmann::json report;
  report["suite"] = "random";
  report["protocol"] = protocol(opts);
  report["protocol"]["instances"] = {{"model", "erdos-renyi"}, {"count", opts.count}, {"n", opts.n},
                                     {"p", opts.p}, {"base_seed", opts.base_seed}};

  std::vector<nlohmann::json> rows(opts.count);
  parallel_for(opts.count, opts.jobs, [&](std::size_t i) {
    const auto g = gen_random(RandomModel::ErdosRenyi, opts.n, opts.p, opts.base_seed + i);
    const auto w = build_weights(g, nullptr, WeightMode::Unit);
    const auto greedy_r = solve_greedy(g, w);
    const auto mewis_r = solve_mewis_best_of(g, w, opts.cfg, opts.seeds);
    nlohmann::json row{{"instance", i},
                       {"graph_seed", opts.base_seed + i},
                       {"m", g.num_edges()},
                       {"greedy", greedy_r.size},
                       {"mewis", mewis_r.size}};
    bool valid = verify_independent(g, greedy_r.selected) && verify_independent(g, mewis_r.selected);
    if (g.num_nodes() <= kMaxEnumerationNodes) {
      const auto ex = exact_enumerate(g, w.weights);
      valid = valid && verify_independent(g, ex.best_set);
      row["exact"] = ex.best_set.size();
      const double opt = static_cast<double>(ex.best_set.size());
      row["mewis_ratio"] = opt > 0 ? static_cast<double>(mewis_r.size) / opt : 1.0;
      row["greedy_ratio"] = opt > 0 ? static_cast<double>(greedy_r.size) / opt : 1.0;
    }
    row["valid"] = valid;
    rows[i] = std::move(row);
  });

  std::size_t near_opt = 0, beats_greedy = 0, all_valid = 0;
  for (const auto& r : rows) {
    if (r.contains("mewis_ratio") && r["mewis_ratio"].get<double>() >= 0.9) ++near_opt;
    if (r["mewis"].get<std::size_t>() >= r["greedy"].get<std::size_t>()) ++beats_greedy;
    if (r["valid"].get<bool>()) ++all_valid;
  }
  report["instances"] = rows;
  report["summary"] = {{"count", opts.count},
                       {"mewis_at_least_90pct_of_exact", near_opt},
                       {"mewis_at_least_greedy", beats_greedy},
                       {"valid", all_valid}};
  return report;
}

std::string bench_markdown(const nlohmann::json& report) {
  std::ostringstream md;
  md << "# MWIS benchmark (" << report.value("suite", "?") << ")\n\n";
  md << "Protocol: `" << report["protocol"].dump() << "`\n\n";
  if (report["suite"] == "citation") {
    md << "| dataset | n | m | greedy | mewis (best) | mewis per seed | forward ms | valid |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& d : report["datasets"]) {
      std::string per_seed;
      for (const auto& r : d["mewis"]) {
        if (!per_seed.empty()) per_seed += ", ";
        per_seed += std::to_string(r["size"].get<std::size_t>());
      }
      md << "| " << d["name"].get<std::string>() << " | " << d["n"] << " | " << d["m"] << " | "
         << d["greedy"]["size"] << " | " << d["mewis_best"] << " | " << per_seed << " | " << std::fixed
         << std::setprecision(1) << d["forward_ms"].get<double>() << " | " << (d["valid"].get<bool>() ? "yes" : "NO")
         << " |\n";
    }
    if (!report["missing"].empty()) {
      md << "\nMissing datasets:";
      for (const auto& m : report["missing"]) md << ' ' << m.get<std::string>();
      md << '\n';
    }
  } else {
    md << "| instance | m | exact | greedy | mewis | valid |\n|---|---|---|---|---|---|\n";
    for (const auto& r : report["instances"]) {
      md << "| " << r["instance"] << " | " << r["m"] << " | " << (r.contains("exact") ? r["exact"].dump() : "-")
         << " | " << r["greedy"] << " | " << r["mewis"] << " | " << (r["valid"].get<bool>() ? "yes" : "NO")
         << " |\n";
    }
    const auto& s = report["summary"];
    md << "\nMEWIS >= 90% of exact: " << s["mewis_at_least_90pct_of_exact"] << "/" << s["count"]
       << "; MEWIS >= greedy: " << s["mewis_at_least_greedy"] << "/" << s["count"] << "; valid: " << s["valid"]
       << "/" << s["count"] << '\n';
  }
  return md.str();
}

}  // namespace mewis
