#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mewis/errors.hpp"
#include "mewis/graph.hpp"
#include "support.hpp"

using namespace mewis;
using namespace mewis::testing;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("mewis_test_" + name);
  std::ofstream(p) << content;
  return p;
}

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("edge list parsing") {
  SUBCASE("path") {
    auto g = parse_edge_list("0 1\n1 2");
    CHECK(g.num_nodes() == 3);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  }
  SUBCASE("reversed duplicate collapses") {
    auto g = parse_edge_list("0 1\n1 0");
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 1);
  }
  SUBCASE("comments, blank lines and tabs") {
    auto g = parse_edge_list("# header\n\n3\t1  # trailing\n1 3\n");
    CHECK(g.num_nodes() == 4);
    CHECK(g.edges() == std::vector<Edge>{{1, 3}});
  }
  SUBCASE("n_override keeps isolated nodes") {
    auto g = parse_edge_list("0 1\n", 5);
    CHECK(g.num_nodes() == 5);
    CHECK(g.degree(4) == 0);
  }
  SUBCASE("empty file") { CHECK(parse_edge_list("").num_nodes() == 0); }
}

TEST_CASE("edge list errors name the line") {
  CHECK(error_of([] { parse_edge_list("0 1\n1 x\n"); }).find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_edge_list("0 1 2\n"); }).find("line 1") != std::string::npos);
  CHECK(error_of([] { parse_edge_list("0 1\n2 2\n"); }).find("self-loop") != std::string::npos);
  CHECK(error_of([] { parse_edge_list("0 1\n1 7\n", 5); }).find("exceeds") != std::string::npos);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.txt"), InputError);
}

TEST_CASE("graph invariants hold on random graphs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto g = gen_random(RandomModel::ErdosRenyi, 1 + seed % 20, 0.3, seed);
    std::size_t degree_sum = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      degree_sum += g.degree(v);
      auto nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      for (NodeId u : nb) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));
      }
    }
    CHECK(degree_sum == 2 * g.num_edges());
  }
}

TEST_CASE("save then load is the identity on canonical graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_random(RandomModel::ErdosRenyi, 12, 0.25, seed);
    auto path = std::filesystem::temp_directory_path() / "mewis_test_roundtrip.txt";
    save_edge_list(g, path);
    CHECK(load_edge_list(path, g.num_nodes()) == g);
  }
}

TEST_CASE("feature parsing") {
  SUBCASE("3x2") {
    auto x = parse_features("1.0 0.0\n1.0 0.0\n1.0 0.0\n", 3);
    CHECK(x.rows() == 3);
    CHECK(x.cols() == 2);
    CHECK(x(2, 0) == 1.0);
  }
  SUBCASE("empty with n=0") {
    auto x = parse_features("", 0);
    CHECK(x.rows() == 0);
    CHECK(x.cols() == 0);
  }
  SUBCASE("ragged rows report the line") {
    CHECK(error_of([] { parse_features("1 2\n3\n", 2); }).find("line 2") != std::string::npos);
  }
  SUBCASE("row count mismatch") { CHECK_THROWS_AS(parse_features("1\n2\n", 3), InputError); }
  SUBCASE("non-numeric token") { CHECK_THROWS_AS(parse_features("1 abc\n", 1), InputError); }
  SUBCASE("file round trip is exact") {
    FeatureMatrix x(2, 2);
    x << 0.1, -3.25e-7, 1.0 / 3.0, 12345.678;
    auto p = std::filesystem::temp_directory_path() / "mewis_test_features.txt";
    save_features(x, p);
    CHECK(load_features(p, 2) == x);
  }
  SUBCASE("load from file") {
    auto p = temp_file("feat.txt", "1 2\n3 4\n");
    CHECK(load_features(p, 2)(1, 1) == 4.0);
  }
}

TEST_CASE("random graph generation") {
  CHECK(gen_random(RandomModel::ErdosRenyi, 5, 0.0, 7).num_edges() == 0);
  auto k5 = gen_random(RandomModel::ErdosRenyi, 5, 1.0, 7);
  CHECK(k5.num_edges() == 10);
  CHECK(gen_random(RandomModel::ErdosRenyi, 16, 0.5, 1) == gen_random(RandomModel::ErdosRenyi, 16, 0.5, 1));
  CHECK_FALSE(gen_random(RandomModel::ErdosRenyi, 16, 0.5, 1) == gen_random(RandomModel::ErdosRenyi, 16, 0.5, 2));
  CHECK_THROWS_AS(gen_random(RandomModel::ErdosRenyi, 5, 1.5, 7), InputError);
  CHECK_THROWS_AS(gen_random(RandomModel::ErdosRenyi, 5, -0.1, 7), InputError);
  CHECK(gen_random_connected(20, 0.15, 3).num_components() == 1);
}

TEST_CASE("walk reachability examples") {
  SUBCASE("path a-b-c, subset {a,c}") {
    auto r = walk_reachability(path_graph(3), std::vector<NodeId>{0, 2});
    CHECK(r(0, 1));
    CHECK(r(1, 0));
    CHECK_FALSE(r(0, 0));
  }
  SUBCASE("two isolated nodes") {
    auto r = walk_reachability(Graph(2, std::vector<Edge>{}), std::vector<NodeId>{0, 1});
    CHECK(r.count() == 0);
  }
  SUBCASE("triangle, subset {0,1}") {
    auto r = walk_reachability(complete_graph(3), std::vector<NodeId>{0, 1});
    CHECK(r(0, 1));
  }
  SUBCASE("distance four is not reached") {
    auto r = walk_reachability(path_graph(5), std::vector<NodeId>{0, 4});
    CHECK_FALSE(r(0, 1));
  }
  SUBCASE("out of range subset id") {
    CHECK_THROWS_AS(walk_reachability(path_graph(3), std::vector<NodeId>{0, 3}), InputError);
  }
}

TEST_CASE("walk reachability matches the dense formula for n <= 12") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const double p = std::uniform_real_distribution<double>(0.05, 0.7)(rng);
    auto g = gen_random(RandomModel::ErdosRenyi, n, p, rng());
    std::vector<NodeId> subset;
    for (NodeId v = 0; v < n; ++v)
      if (rng() % 2) subset.push_back(v);
    auto sparse = walk_reachability(g, subset).to_dense();
    CHECK(sparse == dense_pooled_adjacency(g, subset));
    CHECK(sparse == sparse.transpose());
  }
}
