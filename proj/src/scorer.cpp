#include "mewis/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "mewis/errors.hpp"
#include "mewis/loss.hpp"

namespace mewis {

namespace {

using ConstMap = Eigen::Map<const Matrix>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic>;
using ConstRowMap = Eigen::Map<const RowVec>;

double logistic(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

// Neighbour sums are averaged; raw sums saturate the logistic head on dense graphs.
std::vector<double> neighbor_scale(const Graph& g) {
  std::vector<double> c(g.num_nodes(), 1.0);
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    if (g.degree(i) > 0) c[i] = 1.0 / static_cast<double>(g.degree(i));
  return c;
}

// (1 + eps) h_i + c_i sum_{j in N(i)} h_j
Matrix aggregate(const Graph& g, const Matrix& h, double eps, const std::vector<double>& c) {
  Matrix out = (1.0 + eps) * h;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) out.row(i) += c[i] * h.row(j);
  }
  return out;
}

// Adjoint of aggregate.
Matrix aggregate_adjoint(const Graph& g, const Matrix& d, double eps, const std::vector<double>& c) {
  Matrix out = (1.0 + eps) * d;
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    for (NodeId i : g.neighbors(j)) out.row(j) += c[i] * d.row(i);
  }
  return out;
}

struct LayerCache {
  Matrix input;  // h
  Matrix agg;
  Matrix pre1;   // agg W1 + b1
  Matrix act1;   // relu(pre1)
  Matrix pre2;   // act1 W2 + b2
};

struct ForwardCache {
  std::vector<LayerCache> layers;
  Matrix last;  // relu(pre2) of the final layer
  Eigen::VectorXd logits;
  std::vector<double> z;
  std::vector<bool> clamped;
  std::vector<double> scale;
};

ForwardCache run_forward(const ScorerModel& model, const Graph& g, const Matrix& inputs) {
  const auto& dims = model.dims();
  if (static_cast<std::size_t>(inputs.rows()) != g.num_nodes() ||
      static_cast<std::size_t>(inputs.cols()) != dims.inputs) {
    throw InputError("scorer inputs are " + std::to_string(inputs.rows()) + "x" + std::to_string(inputs.cols()) +
                     ", expected " + std::to_string(g.num_nodes()) + "x" + std::to_string(dims.inputs));
  }
  const auto p = model.params();
  const auto hidden = static_cast<Eigen::Index>(dims.hidden);

  ForwardCache cache;
  cache.scale = neighbor_scale(g);
  const auto& scale = cache.scale;
  cache.layers.resize(dims.layers);
  Matrix h = inputs;
  for (std::size_t k = 0; k < dims.layers; ++k) {
    const auto off = model.layer_offsets(k);
    const auto in = static_cast<Eigen::Index>(off.in);
    ConstMap w1(p.data() + off.w1, in, hidden);
    ConstRowMap b1(p.data() + off.b1, hidden);
    ConstMap w2(p.data() + off.w2, hidden, hidden);
    ConstRowMap b2(p.data() + off.b2, hidden);

    auto& c = cache.layers[k];
    c.agg = aggregate(g, h, p[off.eps], scale);
    c.pre1 = c.agg * w1;
    c.pre1.rowwise() += b1;
    c.act1 = c.pre1.cwiseMax(0.0);
    c.pre2 = c.act1 * w2;
    c.pre2.rowwise() += b2;
    c.input = std::move(h);
    h = c.pre2.cwiseMax(0.0);
  }
  const auto head = model.head_offset();
  Eigen::Map<const Eigen::VectorXd> wh(p.data() + head, hidden);
  cache.logits = h * wh;
  cache.logits.array() += p[head + dims.hidden];
  cache.last = std::move(h);

  const auto n = g.num_nodes();
  cache.z.resize(n);
  cache.clamped.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = logistic(cache.logits(static_cast<Eigen::Index>(i)));
    const double zc = std::clamp(s, kScoreFloor, kScoreCeil);
    cache.clamped[i] = zc != s;
    cache.z[i] = zc;
  }
  return cache;
}

}  // namespace

ScorerModel::ScorerModel(ModelDims dims, std::vector<double> params) : dims_(dims), params_(std::move(params)) {
  if (dims_.inputs == 0 || dims_.hidden == 0 || dims_.layers == 0) {
    throw InputError("scorer dimensions must be positive");
  }
  if (params_.size() != parameter_count(dims_)) {
    throw InputError("scorer expects " + std::to_string(parameter_count(dims_)) + " parameters, got " +
                     std::to_string(params_.size()));
  }
}

std::size_t ScorerModel::parameter_count(const ModelDims& d) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < d.layers; ++k) {
    const std::size_t in = k == 0 ? d.inputs : d.hidden;
    count += 1 + in * d.hidden + d.hidden + d.hidden * d.hidden + d.hidden;
  }
  return count + d.hidden + 1;
}

ScorerModel::LayerOffsets ScorerModel::layer_offsets(std::size_t layer) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k <= layer; ++k) {
    const std::size_t in = k == 0 ? dims_.inputs : dims_.hidden;
    LayerOffsets lo{};
    lo.in = in;
    lo.eps = off;
    lo.w1 = lo.eps + 1;
    lo.b1 = lo.w1 + in * dims_.hidden;
    lo.w2 = lo.b1 + dims_.hidden;
    lo.b2 = lo.w2 + dims_.hidden * dims_.hidden;
    off = lo.b2 + dims_.hidden;
    if (k == layer) return lo;
  }
  return {};
}

std::size_t ScorerModel::head_offset() const {
  const auto last = layer_offsets(dims_.layers - 1);
  return last.b2 + dims_.hidden;
}

ScorerModel ScorerModel::initialize(ModelDims dims, std::uint64_t seed) {
  ScorerModel model(dims, std::vector<double>(parameter_count(dims), 0.0));
  std::mt19937_64 rng(seed);
  auto glorot = [&](std::size_t offset, std::size_t fan_in, std::size_t fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> unif(-bound, bound);
    for (std::size_t i = 0; i < fan_in * fan_out; ++i) model.params_[offset + i] = unif(rng);
  };
  for (std::size_t k = 0; k < dims.layers; ++k) {
    const auto off = model.layer_offsets(k);
    glorot(off.w1, off.in, dims.hidden);
    glorot(off.w2, dims.hidden, dims.hidden);
  }
  glorot(model.head_offset(), dims.hidden, 1);
  return model;
}

void ScorerModel::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["format"] = "mewis-scorer/1";
  j["inputs"] = dims_.inputs;
  j["hidden"] = dims_.hidden;
  j["layers"] = dims_.layers;
  j["params"] = params_;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

ScorerModel ScorerModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format") != "mewis-scorer/1") throw InputError("unknown checkpoint format");
    ModelDims dims{j.at("inputs").get<std::size_t>(), j.at("hidden").get<std::size_t>(),
                   j.at("layers").get<std::size_t>()};
    return ScorerModel(dims, j.at("params").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed checkpoint: ") + e.what());
  }
}

Matrix node_inputs(const Graph& g, const EntropyWeights& w, bool with_degree) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  if (w.size() != g.num_nodes()) throw InputError("weights do not match graph size");
  Matrix x(n, with_degree ? 2 : 1);
  const double max_deg = std::max<double>(1.0, static_cast<double>(g.max_degree()));
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = w.weights[static_cast<std::size_t>(i)];
    if (with_degree) x(i, 1) = static_cast<double>(g.degree(static_cast<NodeId>(i))) / max_deg;
  }
  return x;
}

std::vector<double> forward(const ScorerModel& model, const Graph& g, const Matrix& inputs) {
  return run_forward(model, g, inputs).z;
}

LossGradient loss_gradient(const ScorerModel& model, const Graph& g, const EntropyWeights& w,
                           const Matrix& inputs) {
  auto cache = run_forward(model, g, inputs);
  const auto& dims = model.dims();
  const auto p = model.params();
  const auto hidden = static_cast<Eigen::Index>(dims.hidden);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());

  LossGradient out;
  out.loss = pool_loss(g, w, cache.z);
  out.grad.assign(p.size(), 0.0);
  auto& grad = out.grad;

  // Through the clamped logistic head.
  const auto dz = pool_loss_grad_z(g, w.weights, cache.z);
  Eigen::VectorXd dlogit(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double z = cache.z[ui];
    dlogit(i) = cache.clamped[ui] ? 0.0 : dz[ui] * z * (1.0 - z);
  }
  const auto head = model.head_offset();
  Eigen::Map<const Eigen::VectorXd> wh(p.data() + head, hidden);
  Eigen::Map<Eigen::VectorXd>(grad.data() + head, hidden) = cache.last.transpose() * dlogit;
  grad[head + dims.hidden] = dlogit.sum();
  Matrix dh = dlogit * wh.transpose();
  const auto& scale = cache.scale;

  for (std::size_t k = dims.layers; k-- > 0;) {
    const auto off = model.layer_offsets(k);
    const auto in = static_cast<Eigen::Index>(off.in);
    const auto& c = cache.layers[k];
    ConstMap w1(p.data() + off.w1, in, hidden);
    ConstMap w2(p.data() + off.w2, hidden, hidden);

    Matrix dpre2 = dh.cwiseProduct((c.pre2.array() > 0.0).cast<double>().matrix());
    Eigen::Map<Matrix>(grad.data() + off.w2, hidden, hidden) = c.act1.transpose() * dpre2;
    Eigen::Map<RowVec>(grad.data() + off.b2, hidden) = dpre2.colwise().sum();
    Matrix dact1 = dpre2 * w2.transpose();
    Matrix dpre1 = dact1.cwiseProduct((c.pre1.array() > 0.0).cast<double>().matrix());
    Eigen::Map<Matrix>(grad.data() + off.w1, in, hidden) = c.agg.transpose() * dpre1;
    Eigen::Map<RowVec>(grad.data() + off.b1, hidden) = dpre1.colwise().sum();
    Matrix dagg = dpre1 * w1.transpose();

    grad[off.eps] = dagg.cwiseProduct(c.input).sum();
    dh = aggregate_adjoint(g, dagg, p[off.eps], scale);
  }
  out.z = std::move(cache.z);
  return out;
}

Adam::Adam(std::size_t size, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
  }
}

}  // namespace mewis
