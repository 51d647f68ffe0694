#include "mewis/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "mewis/errors.hpp"

namespace mewis {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("read failure on " + path.string());
  return buf.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    f(lineno, text.substr(pos, end - pos));
    pos = end + 1;
  }
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::uint64_t parse_id(std::string_view tok, std::size_t lineno) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw InputError("line " + std::to_string(lineno) + ": bad node id '" + std::string(tok) + "'");
  }
  return v;
}

double parse_real(std::string_view tok, std::size_t lineno) {
  // from_chars for double is missing on older libstdc++; strtod is fine here.
  std::string s(tok);
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    throw InputError("line " + std::to_string(lineno) + ": non-numeric token '" + s + "'");
  }
  if (!std::isfinite(v)) {
    throw InputError("line " + std::to_string(lineno) + ": non-finite value '" + s + "'");
  }
  return v;
}

}  // namespace

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw InputError("self-loop on node " + std::to_string(u));
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for n=" + std::to_string(n));
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(n + 1, 0);
  for (auto [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges_) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1]);
  }
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Eigen::MatrixXd Graph::dense_adjacency() const {
  const auto n = static_cast<Eigen::Index>(num_nodes());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : edges_) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Graph Graph::induced(std::span<const NodeId> nodes) const {
  std::vector<std::int64_t> pos(num_nodes(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) pos[nodes[k]] = static_cast<std::int64_t>(k);
  std::vector<Edge> sub;
  for (auto [u, v] : edges_) {
    if (pos[u] >= 0 && pos[v] >= 0) {
      sub.emplace_back(static_cast<NodeId>(pos[u]), static_cast<NodeId>(pos[v]));
    }
  }
  return Graph(nodes.size(), sub);
}

std::vector<std::uint32_t> Graph::component_labels() const {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(num_nodes(), kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < num_nodes(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : neighbors(v)) {
        if (label[u] == kUnset) {
          label[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t Graph::num_components() const {
  auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

Graph parse_edge_list(std::string_view text, std::optional<std::size_t> n_override) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  for_each_line(text, [&](std::size_t lineno, std::string_view raw) {
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) return;
    if (toks.size() != 2) {
      throw InputError("line " + std::to_string(lineno) + ": expected two node ids");
    }
    auto u = parse_id(toks[0], lineno);
    auto v = parse_id(toks[1], lineno);
    if (u == v) throw InputError("line " + std::to_string(lineno) + ": self-loop on node " + std::to_string(u));
    if (n_override && (u >= *n_override || v >= *n_override)) {
      throw InputError("line " + std::to_string(lineno) + ": node id exceeds n=" + std::to_string(*n_override));
    }
    if (std::max(u, v) >= std::numeric_limits<NodeId>::max()) {
      throw InputError("line " + std::to_string(lineno) + ": node id too large");
    }
    max_id = std::max({max_id, u, v});
    any = true;
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  });
  std::size_t n = n_override ? *n_override : (any ? static_cast<std::size_t>(max_id) + 1 : 0);
  return Graph(n, edges);
}

Graph load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n_override) {
  return parse_edge_list(read_file(path), n_override);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

FeatureMatrix parse_features(std::string_view text, std::size_t n) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  for_each_line(text, [&](std::size_t lineno, std::string_view raw) {
    auto toks = split_ws(raw);
    if (toks.empty()) return;
    if (!rows.empty() && toks.size() != width) {
      throw InputError("line " + std::to_string(lineno) + ": ragged row (expected " + std::to_string(width) +
                       " values, got " + std::to_string(toks.size()) + ")");
    }
    width = toks.size();
    std::vector<double> row;
    row.reserve(width);
    for (auto t : toks) row.push_back(parse_real(t, lineno));
    rows.push_back(std::move(row));
  });
  if (rows.size() != n) {
    throw InputError("feature file has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  }
  FeatureMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < width; ++k) x(i, k) = rows[i][k];
  }
  return x;
}

FeatureMatrix load_features(const std::filesystem::path& path, std::size_t n) {
  return parse_features(read_file(path), n);
}

void save_features(const FeatureMatrix& x, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      if (k) out << ' ';
      out << x(i, k);
    }
    out << '\n';
  }
}

std::vector<double> load_weights(const std::filesystem::path& path, std::size_t n) {
  auto x = load_features(path, n);
  if (n > 0 && x.cols() != 1) throw InputError("weight file must hold one value per line");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = x(i, 0);
  return w;
}

Graph gen_random(RandomModel model, std::size_t n, double p, std::uint64_t seed) {
  if (model != RandomModel::ErdosRenyi) throw InputError("unknown random model");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (unif(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph gen_random_connected(std::size_t n, double p, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    auto g = gen_random(RandomModel::ErdosRenyi, n, p, s);
    if (g.num_components() <= 1) return g;
  }
}

bool Reachability::operator()(std::size_t a, std::size_t b) const {
  const auto& r = rows_[a];
  return std::binary_search(r.begin(), r.end(), static_cast<std::uint32_t>(b));
}

std::size_t Reachability::count() const {
  std::size_t c = 0;
  for (const auto& r : rows_) c += r.size();
  return c;
}

Eigen::MatrixXd Reachability::to_dense() const {
  const auto k = static_cast<Eigen::Index>(rows_.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (auto b : rows_[a]) m(a, b) = 1.0;
  }
  return m;
}

Reachability walk_reachability(const Graph& g, std::span<const NodeId> subset) {
  const std::size_t n = g.num_nodes();
  // Subset positions per node; a node may appear at several positions.
  std::vector<std::vector<std::uint32_t>> positions(n);
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= n) throw InputError("subset id " + std::to_string(subset[k]) + " out of range");
    positions[subset[k]].push_back(static_cast<std::uint32_t>(k));
  }

  std::vector<std::uint32_t> two_hop_stamp(n, 0);
  std::vector<std::uint32_t> hit_stamp(n, 0);
  std::vector<NodeId> two_hop;
  std::vector<std::vector<std::uint32_t>> rows(subset.size());

  for (std::size_t k = 0; k < subset.size(); ++k) {
    const auto stamp = static_cast<std::uint32_t>(k + 1);
    const NodeId src = subset[k];
    two_hop.clear();
    for (NodeId x : g.neighbors(src)) {
      for (NodeId y : g.neighbors(x)) {
        if (two_hop_stamp[y] != stamp) {
          two_hop_stamp[y] = stamp;
          two_hop.push_back(y);
        }
      }
    }
    auto& row = rows[k];
    auto mark = [&](NodeId v) {
      if (hit_stamp[v] == stamp) return;
      hit_stamp[v] = stamp;
      for (auto pos : positions[v]) {
        if (pos != k) row.push_back(pos);
      }
    };
    for (NodeId y : two_hop) {
      mark(y);
      for (NodeId v : g.neighbors(y)) mark(v);
    }
    std::sort(row.begin(), row.end());
  }
  return Reachability(std::move(rows));
}

}  // namespace mewis
