#include <doctest.h>

#include <cmath>

#include "mewis/entropy.hpp"
#include "mewis/errors.hpp"
#include "support.hpp"

using namespace mewis;
using namespace mewis::testing;

namespace {

FeatureMatrix column(std::initializer_list<double> values) {
  FeatureMatrix x(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) x(i++, 0) = v;
  return x;
}

FeatureMatrix random_features(std::size_t n, std::size_t f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  FeatureMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = d(rng);
  return x;
}

// Direct evaluation of the nested per-dimension norms.
std::vector<double> nested_variation(const Graph& g, const FeatureMatrix& x) {
  std::vector<double> out(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    double outer = 0.0;
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      double inner = 0.0;
      for (NodeId j : g.neighbors(i)) inner += std::pow(x(j, k) - x(i, k), 2);
      outer += std::pow(std::sqrt(inner), 2);
    }
    out[i] = std::sqrt(outer);
  }
  return out;
}

}  // namespace

TEST_CASE("local variation examples") {
  CHECK(local_variation(cycle_graph(6), FeatureMatrix::Constant(6, 3, 2.5)) == std::vector<double>(6, 0.0));

  auto edge = local_variation(path_graph(2), column({0.0, 3.0}));
  CHECK(edge[0] == doctest::Approx(3.0));
  CHECK(edge[1] == doctest::Approx(3.0));

  auto star = local_variation(star_graph(2), column({0.0, 1.0, 1.0}));
  CHECK(star[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(star[1] == doctest::Approx(1.0));
  CHECK(star[2] == doctest::Approx(1.0));

  CHECK(local_variation(Graph(2, std::vector<Edge>{}), column({1.0, 5.0})) == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(local_variation(path_graph(3), column({1.0, 2.0})), InputError);
}

TEST_CASE("local variation equals the nested norm form") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = gen_random(RandomModel::ErdosRenyi, 3 + seed % 15, 0.3, seed);
    auto x = random_features(g.num_nodes(), 1 + seed % 4, seed);
    auto got = local_variation(g, x);
    auto want = nested_variation(g, x);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("node probabilities") {
  CHECK(node_probabilities(std::vector<double>(4, 0.0)) == std::vector<double>(4, 0.25));

  auto two = node_probabilities(std::vector<double>{0.0, std::log(3.0)});
  CHECK(two[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(two[1] == doctest::Approx(0.25).epsilon(1e-12));

  auto big = node_probabilities(std::vector<double>{1e6, 0.0, 0.0});
  CHECK(big[0] < 1e-300);
  CHECK(big[0] + big[1] + big[2] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(node_probabilities(std::vector<double>{}), InputError);
  CHECK_THROWS_AS(node_probabilities(std::vector<double>{0.0, NAN}), InputError);
}

TEST_CASE("node entropies") {
  auto h = node_entropies(std::vector<double>{1.0, 0.25, 0.0});
  CHECK(h[0] == 0.0);
  CHECK(h[1] == doctest::Approx(0.25 * std::log(4.0)));
  CHECK(h[1] == doctest::Approx(0.34657).epsilon(1e-5));
  CHECK(h[2] == 0.0);
  CHECK_THROWS_AS(node_entropies(std::vector<double>{1.5}), InputError);
  CHECK_THROWS_AS(node_entropies(std::vector<double>{-0.1}), InputError);
}

TEST_CASE("build weights") {
  SUBCASE("unit mode") {
    auto w = build_weights(cycle_graph(5), nullptr, WeightMode::Unit);
    CHECK(w.weights == std::vector<double>(5, 1.0));
    CHECK(w.gamma == 5.0);
    CHECK(w.prob == std::vector<double>(5, 0.2));
    CHECK(w.entropy[0] == doctest::Approx(std::log(5.0) / 5.0));
  }
  SUBCASE("entropy mode, constant features") {
    FeatureMatrix x = FeatureMatrix::Ones(4, 2);
    auto w = build_weights(path_graph(4), &x, WeightMode::Entropy);
    for (double v : w.weights) CHECK(v == doctest::Approx(0.34657).epsilon(1e-5));
    CHECK(w.gamma == doctest::Approx(1.38629).epsilon(1e-5));
  }
  SUBCASE("single node") {
    FeatureMatrix x = FeatureMatrix::Ones(1, 1);
    auto w = build_weights(Graph(1, std::vector<Edge>{}), &x, WeightMode::Entropy);
    CHECK(w.prob == std::vector<double>{1.0});
    CHECK(w.weights == std::vector<double>{0.0});
    CHECK(w.gamma == 0.0);
  }
  SUBCASE("entropy mode needs features") {
    CHECK_THROWS_AS(build_weights(path_graph(3), nullptr, WeightMode::Entropy), InputError);
  }
  SUBCASE("weights from values") {
    auto w = weights_from_values({1.0, 3.0, 1.0});
    CHECK(w.gamma == 5.0);
    CHECK_THROWS_AS(weights_from_values({1.0, -1.0}), InputError);
  }
}

TEST_CASE("weight invariants on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = gen_random(RandomModel::ErdosRenyi, 1 + seed % 25, 0.2, seed);
    auto x = random_features(g.num_nodes(), 3, seed + 100);
    auto w = build_weights(g, &x, WeightMode::Entropy);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      total += w.prob[i];
      CHECK(w.prob[i] >= 0.0);
      CHECK(w.prob[i] <= 1.0);
      CHECK(w.entropy[i] >= 0.0);
      CHECK(w.delta[i] >= 0.0);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    double gamma = 0.0;
    for (double v : w.weights) gamma += v;
    CHECK(w.gamma == gamma);
  }
}

TEST_CASE("relabeling nodes permutes every statistic") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = gen_random(RandomModel::ErdosRenyi, 2 + seed % 20, 0.25, seed);
    auto x = random_features(g.num_nodes(), 2, seed);
    auto perm = random_permutation(g.num_nodes(), seed);
    auto pg = permute(g, perm);
    FeatureMatrix px(x.rows(), x.cols());
    for (NodeId v = 0; v < g.num_nodes(); ++v) px.row(perm[v]) = x.row(v);

    auto a = build_weights(g, &x, WeightMode::Entropy);
    auto b = build_weights(pg, &px, WeightMode::Entropy);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      CHECK(b.delta[perm[v]] == doctest::Approx(a.delta[v]).epsilon(1e-12));
      CHECK(b.prob[perm[v]] == doctest::Approx(a.prob[v]).epsilon(1e-12));
      CHECK(b.entropy[perm[v]] == doctest::Approx(a.entropy[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("translating all features leaves the weights unchanged") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_random(RandomModel::ErdosRenyi, 10, 0.3, seed);
    auto x = random_features(10, 3, seed);
    FeatureMatrix shifted = x;
    shifted.rowwise() += Eigen::RowVector3d(4.0, -2.0, 0.5);
    auto a = build_weights(g, &x, WeightMode::Entropy);
    auto b = build_weights(g, &shifted, WeightMode::Entropy);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(b.delta[i] == doctest::Approx(a.delta[i]).epsilon(1e-9));
      CHECK(b.entropy[i] == doctest::Approx(a.entropy[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("raising one variation strictly lowers its probability") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> delta(8);
    for (auto& d : delta) d = u(rng);
    const std::size_t i = rng() % delta.size();
    const double before = node_probabilities(delta)[i];
    delta[i] += 0.1 + u(rng);
    CHECK(node_probabilities(delta)[i] < before);
  }
}
