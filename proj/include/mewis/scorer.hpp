#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mewis/entropy.hpp"
#include "mewis/graph.hpp"

namespace mewis {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kScoreFloor = 1e-7;
inline constexpr double kScoreCeil = 1.0 - 1e-7;

struct ModelDims {
  std::size_t inputs = 2;
  std::size_t hidden = 32;
  std::size_t layers = 6;

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

/// GIN-style scorer. Each layer computes
///
///   h'_i = relu(W2 relu(W1 ((1 + eps) h_i + mean_{j in N(i)} h_j) + b1) + b2)
///
/// and a logistic head maps the last layer to a score per node.
///
/// All parameters live in one flat vector. Layout, layer-major: for each
/// layer `eps, W1 (in x hidden), b1, W2 (hidden x hidden), b2`; then the head
/// `w (hidden), b`. Matrices are row-major.
class ScorerModel {
 public:
  ScorerModel() = default;
  ScorerModel(ModelDims dims, std::vector<double> params);

  /// Glorot-uniform affine maps, zero biases, eps = 0.
  static ScorerModel initialize(ModelDims dims, std::uint64_t seed);
  static std::size_t parameter_count(const ModelDims& dims);

  const ModelDims& dims() const noexcept { return dims_; }
  std::span<double> params() noexcept { return params_; }
  std::span<const double> params() const noexcept { return params_; }

  struct LayerOffsets {
    std::size_t in, eps, w1, b1, w2, b2;
  };
  LayerOffsets layer_offsets(std::size_t layer) const;
  std::size_t head_offset() const;

  void save(const std::filesystem::path& path) const;
  static ScorerModel load(const std::filesystem::path& path);

  friend bool operator==(const ScorerModel& a, const ScorerModel& b) {
    return a.dims_ == b.dims_ && a.params_ == b.params_;
  }

 private:
  ModelDims dims_;
  std::vector<double> params_;
};

/// Scorer inputs: column 0 holds w_i; column 1 (optional) holds
/// deg(i) / max(1, max degree).
Matrix node_inputs(const Graph& g, const EntropyWeights& w, bool with_degree = false);

/// Scores clamped to [kScoreFloor, kScoreCeil].
std::vector<double> forward(const ScorerModel& model, const Graph& g, const Matrix& inputs);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad;  // same layout as ScorerModel::params()
  std::vector<double> z;
};

/// Exact reverse-mode gradient of pool_loss(forward(.)).
LossGradient loss_gradient(const ScorerModel& model, const Graph& g, const EntropyWeights& w,
                           const Matrix& inputs);

/// Adam state over a flat parameter vector.
class Adam {
 public:
  Adam(std::size_t size, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void step(std::span<double> params, std::span<const double> grad);

 private:
  double lr_, beta1_, beta2_, eps_;
  std::vector<double> m_, v_;
  long t_ = 0;
};

}  // namespace mewis
