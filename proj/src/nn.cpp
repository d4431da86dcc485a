#include "vgcn/nn.hpp"

#include "vgcn/detail/wire.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace vgcn {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::gcn: return "gcn";
    case Variant::nvgcn: return "nvgcn";
    case Variant::gat: return "gat";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "gcn") return Variant::gcn;
  if (name == "nvgcn") return Variant::nvgcn;
  if (name == "gat") return Variant::gat;
  throw std::invalid_argument("unknown model variant: " + name);
}

ModelConfig default_config(Variant variant, int in_features) {
  ModelConfig cfg;
  cfg.variant = variant;
  cfg.in_features = in_features;
  cfg.conv_widths = variant == Variant::gat ? std::vector<int>{32, 64, 64}
                                            : std::vector<int>{64, 128, 128};
  cfg.mlp_widths = {32, 32};
  return cfg;
}

Matrix apply_activation(Activation act, const Matrix& x) {
  switch (act) {
    case Activation::identity: return x;
    case Activation::relu: return x.cwiseMax(0.0);
    case Activation::elu:
      return x.unaryExpr([](Scalar v) { return v > 0 ? v : std::expm1(v); });
  }
  return x;
}

namespace {

Matrix activation_backward(Activation act, const Matrix& pre, const Matrix& grad) {
  switch (act) {
    case Activation::identity: return grad;
    case Activation::relu:
      return (pre.array() > 0).select(grad, Matrix::Zero(grad.rows(), grad.cols()));
    case Activation::elu: {
      Matrix out = grad;
      for (Eigen::Index i = 0; i < out.size(); ++i)
        if (pre(i) <= 0) out(i) *= std::exp(pre(i));
      return out;
    }
  }
  return grad;
}

}  // namespace

DirectedAdjacency DirectedAdjacency::build(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, int node_count) {
  std::vector<std::set<int>> in_neighbors(node_count);
  for (int v = 0; v < node_count; ++v) in_neighbors[v].insert(v);
  for (const auto& [a, b] : edges) {
    if (static_cast<int>(a) >= node_count || static_cast<int>(b) >= node_count)
      throw std::invalid_argument("edge index out of range");
    in_neighbors[b].insert(static_cast<int>(a));
    in_neighbors[a].insert(static_cast<int>(b));
  }
  DirectedAdjacency adj;
  adj.dst_offsets.assign(1, 0);
  for (int v = 0; v < node_count; ++v) {
    for (int u : in_neighbors[v]) adj.src.push_back(u);
    adj.dst_offsets.push_back(static_cast<int>(adj.src.size()));
  }
  return adj;
}

Matrix gcn_forward(const SparseAdjacency& adj_norm, const Matrix& h, const Matrix& w,
                   Activation act, MultCounter* counter) {
  const auto m = h.rows();
  const auto f = h.cols();
  if (counter) {
    // The normalized values bake in the two diagonal scalings; charge them
    // where the staged decomposition puts them.
    counter->add(Stage::deg_scale_pre, m * f);
    counter->add(Stage::deg_scale_post, m * f);
  }
  const Matrix aggregated = spmm(adj_norm, h, counter, Stage::adjacency);
  return apply_activation(act, dense_matmul(aggregated, w, counter, Stage::weight));
}

Matrix nvgcn_forward(const SparseAdjacency& adj_dt, const Matrix& h, const Matrix& w,
                     Activation act, MultCounter* counter) {
  const Matrix aggregated = spmm(adj_dt, h, counter, Stage::adjacency);
  return apply_activation(act, dense_matmul(aggregated, w, counter, Stage::weight));
}

Matrix gat_forward(const DirectedAdjacency& adj, const Matrix& h, const GatConvLayer& layer,
                   Scalar negative_slope, MultCounter* counter, GatCache* cache) {
  const int m = static_cast<int>(h.rows());
  if (adj.node_count() != m) throw std::invalid_argument("gat_forward: node count mismatch");
  const int heads = layer.heads();
  const int fp = layer.out_per_head();
  const std::int64_t entries = adj.entries();

  const Matrix z = dense_matmul(h, layer.w, counter, Stage::weight);
  Matrix s(m, heads), t(m, heads);
  for (int hd = 0; hd < heads; ++hd) {
    const auto zh = z.middleCols(static_cast<Eigen::Index>(hd) * fp, fp);
    s.col(hd) = zh * layer.a_src.row(hd).transpose();
    t.col(hd) = zh * layer.a_dst.row(hd).transpose();
  }
  if (counter) counter->add(Stage::other, 2LL * m * heads * fp);

  Matrix pre(entries, heads), alpha(entries, heads);
  for (int v = 0; v < m; ++v) {
    const int begin = adj.dst_offsets[v];
    const int end = adj.dst_offsets[v + 1];
    for (int hd = 0; hd < heads; ++hd) {
      Scalar max_logit = -std::numeric_limits<Scalar>::infinity();
      for (int e = begin; e < end; ++e) {
        const Scalar raw = s(adj.src[e], hd) + t(v, hd);
        pre(e, hd) = raw;
        const Scalar l = raw > 0 ? raw : negative_slope * raw;
        max_logit = std::max(max_logit, l);
      }
      Scalar sum = 0;
      for (int e = begin; e < end; ++e) {
        const Scalar raw = pre(e, hd);
        const Scalar l = raw > 0 ? raw : negative_slope * raw;
        alpha(e, hd) = std::exp(l - max_logit);
        sum += alpha(e, hd);
      }
      for (int e = begin; e < end; ++e) alpha(e, hd) /= sum;
    }
  }

  Matrix out = Matrix::Zero(m, static_cast<Eigen::Index>(heads) * fp);
  for (int v = 0; v < m; ++v)
    for (int e = adj.dst_offsets[v]; e < adj.dst_offsets[v + 1]; ++e)
      for (int hd = 0; hd < heads; ++hd)
        out.row(v).segment(static_cast<Eigen::Index>(hd) * fp, fp) +=
            alpha(e, hd) * z.row(adj.src[e]).segment(static_cast<Eigen::Index>(hd) * fp, fp);
  if (counter) counter->add(Stage::adjacency, entries * heads * fp);

  if (cache) {
    cache->z = z;
    cache->s = std::move(s);
    cache->t = std::move(t);
    cache->pre = std::move(pre);
    cache->alpha = std::move(alpha);
  }
  return out;
}

Matrix batchnorm_forward(const Matrix& h, BatchNormLayer& bn, Mode mode, BatchNormCache* cache) {
  const auto m = h.rows();
  if (m < 1) throw std::invalid_argument("batchnorm_forward: empty input");
  Vector mean, inv_std;
  if (mode == Mode::train) {
    mean = h.colwise().mean().transpose();
    const Matrix centered = h.rowwise() - mean.transpose();
    const Vector var =
        centered.cwiseProduct(centered).colwise().sum().transpose() / static_cast<Scalar>(m);
    inv_std = (var.array() + bn.eps).rsqrt().matrix();
    const Scalar unbias = m > 1 ? static_cast<Scalar>(m) / static_cast<Scalar>(m - 1) : 1.0;
    bn.running_mean = (1 - bn.momentum) * bn.running_mean + bn.momentum * mean;
    bn.running_var = (1 - bn.momentum) * bn.running_var + bn.momentum * (var * unbias);
  } else {
    mean = bn.running_mean;
    inv_std = (bn.running_var.array() + bn.eps).rsqrt().matrix();
  }
  Matrix xhat = (h.rowwise() - mean.transpose()) * inv_std.asDiagonal();
  Matrix out = xhat * bn.gamma.asDiagonal();
  out.rowwise() += bn.beta.transpose();
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = std::move(inv_std);
  }
  return out;
}

Matrix global_mean_pool(const Matrix& h, const std::vector<int>& graph_id, int graph_count) {
  if (static_cast<Eigen::Index>(graph_id.size()) != h.rows())
    throw std::invalid_argument("global_mean_pool: graph_id size mismatch");
  Matrix pooled = Matrix::Zero(graph_count, h.cols());
  std::vector<int> counts(graph_count, 0);
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    const int g = graph_id[i];
    if (g < 0 || g >= graph_count) throw std::invalid_argument("global_mean_pool: bad graph id");
    pooled.row(g) += h.row(i);
    ++counts[g];
  }
  for (int g = 0; g < graph_count; ++g) {
    if (counts[g] == 0) throw std::invalid_argument("global_mean_pool: empty graph partition");
    pooled.row(g) /= counts[g];
  }
  return pooled;
}

std::pair<Scalar, Matrix> cross_entropy(const Matrix& logits, const std::vector<int>& labels) {
  const auto g = logits.rows();
  if (static_cast<Eigen::Index>(labels.size()) != g)
    throw std::invalid_argument("cross_entropy: label count mismatch");
  Scalar loss = 0;
  Matrix grad(g, logits.cols());
  for (Eigen::Index i = 0; i < g; ++i) {
    if (labels[i] < 0 || labels[i] >= logits.cols())
      throw std::invalid_argument("cross_entropy: label out of range");
    const Scalar max_logit = logits.row(i).maxCoeff();
    const Vector shifted =
        logits.row(i).transpose() - Vector::Constant(logits.cols(), max_logit);
    const Scalar lse = std::log(shifted.array().exp().sum());
    loss -= shifted[labels[i]] - lse;
    grad.row(i) = (shifted.array() - lse).exp().matrix().transpose();
    grad(i, labels[i]) -= 1.0;
  }
  loss /= static_cast<Scalar>(g);
  grad /= static_cast<Scalar>(g);
  return {loss, grad};
}

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

namespace {

void push_param(std::vector<ParamRef>& out, Matrix& m) { out.push_back({m.data(), m.size()}); }
void push_param(std::vector<ParamRef>& out, Vector& v) { out.push_back({v.data(), v.size()}); }

}  // namespace

std::vector<ParamRef> Model::parameters() {
  std::vector<ParamRef> params;
  const std::size_t conv_count = cfg.conv_widths.size();
  for (std::size_t i = 0; i < conv_count; ++i) {
    if (cfg.variant == Variant::gat) {
      push_param(params, gat_convs[i].w);
      push_param(params, gat_convs[i].a_src);
      push_param(params, gat_convs[i].a_dst);
    } else {
      push_param(params, convs[i].w);
    }
    push_param(params, conv_bns[i].gamma);
    push_param(params, conv_bns[i].beta);
  }
  push_param(params, fc1.w);
  push_param(params, fc1.b);
  push_param(params, fc1_bn.gamma);
  push_param(params, fc1_bn.beta);
  push_param(params, fc2.w);
  push_param(params, fc2.b);
  push_param(params, fc_out.w);
  push_param(params, fc_out.b);
  return params;
}

std::int64_t Model::parameter_count() {
  std::int64_t count = 0;
  for (const ParamRef& p : parameters()) count += p.size;
  return count;
}

Matrix Model::forward(const Batch& batch, Mode mode, MultCounter* counter, ForwardCache* cache) {
  if (batch.features.cols() != cfg.in_features)
    throw std::invalid_argument("forward: batch feature width does not match the model");
  const int m = batch.total_nodes();
  ForwardCache local;
  ForwardCache& cx = cache ? *cache : local;
  cx.graph_id = batch.graph_id;
  cx.graph_count = batch.graph_count();
  cx.convs.assign(cfg.conv_widths.size(), ConvCache{});

  if (cfg.variant == Variant::gat) {
    cx.dadj = DirectedAdjacency::build(batch.edges, m);
  } else if (cfg.variant == Variant::nvgcn) {
    cx.adj = sparse_from_edges(to_int_edges(batch.edges), m, cfg.self_loop_weight);
  } else {
    cx.adj = sparse_from_edges(to_int_edges(batch.edges), m, 1.0);
    cx.inv_sqrt_deg = cx.adj.row_sums().array().rsqrt().matrix();
  }

  Matrix h = batch.features;
  for (std::size_t i = 0; i < cfg.conv_widths.size(); ++i) {
    ConvCache& cc = cx.convs[i];
    cc.input = h;
    Matrix pre_bn;
    if (cfg.variant == Variant::gat) {
      pre_bn = gat_forward(cx.dadj, h, gat_convs[i], cfg.negative_slope, counter, &cc.gat);
    } else if (cfg.variant == Variant::nvgcn) {
      cc.aggregated = spmm(cx.adj, h, counter, Stage::adjacency);
      pre_bn = dense_matmul(cc.aggregated, convs[i].w, counter, Stage::weight);
    } else {
      cc.scaled_in = row_scale(cx.inv_sqrt_deg, h, counter, Stage::deg_scale_pre);
      cc.aggregated = spmm(cx.adj, cc.scaled_in, counter, Stage::adjacency);
      cc.scaled_out = row_scale(cx.inv_sqrt_deg, cc.aggregated, counter, Stage::deg_scale_post);
      pre_bn = dense_matmul(cc.scaled_out, convs[i].w, counter, Stage::weight);
    }
    cc.pre_bn = pre_bn;
    cc.pre_act = batchnorm_forward(cc.pre_bn, conv_bns[i], mode, &cc.bn);
    h = apply_activation(Activation::elu, cc.pre_act);
  }
  cx.conv_out = h;

  cx.pooled = global_mean_pool(h, batch.graph_id, batch.graph_count());
  cx.fc1_pre_bn = dense_matmul(cx.pooled, fc1.w, counter, Stage::weight).rowwise() +
                  fc1.b.transpose();
  cx.fc1_pre_act = batchnorm_forward(cx.fc1_pre_bn, fc1_bn, mode, &cx.fc1_bn);
  cx.fc1_act = apply_activation(Activation::relu, cx.fc1_pre_act);
  cx.fc2_pre_act = dense_matmul(cx.fc1_act, fc2.w, counter, Stage::weight).rowwise() +
                   fc2.b.transpose();
  cx.fc2_act = apply_activation(Activation::relu, cx.fc2_pre_act);
  return dense_matmul(cx.fc2_act, fc_out.w, counter, Stage::weight).rowwise() +
         fc_out.b.transpose();
}

Model build_model(const ModelConfig& cfg, std::uint64_t seed) {
  if (cfg.conv_widths.empty()) throw std::invalid_argument("build_model: no conv layers");
  if (cfg.mlp_widths.size() != 2) throw std::invalid_argument("build_model: expected 2 mlp widths");
  if (cfg.heads < 1) throw std::invalid_argument("build_model: heads must be >= 1");

  Model model;
  model.cfg = cfg;
  std::mt19937_64 rng(seed);
  auto glorot = [&rng](Matrix& w, int fan_in, int fan_out) {
    const Scalar limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<Scalar> dist(-limit, limit);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
  };
  auto make_bn = [&cfg](int width) {
    BatchNormLayer bn;
    bn.gamma = Vector::Ones(width);
    bn.beta = Vector::Zero(width);
    bn.running_mean = Vector::Zero(width);
    bn.running_var = Vector::Ones(width);
    bn.eps = cfg.bn_eps;
    bn.momentum = cfg.bn_momentum;
    return bn;
  };

  int width = cfg.in_features;
  for (std::size_t i = 0; i < cfg.conv_widths.size(); ++i) {
    const int out = cfg.conv_widths[i];
    if (cfg.variant == Variant::gat) {
      GatConvLayer layer;
      layer.w.resize(width, static_cast<Eigen::Index>(cfg.heads) * out);
      glorot(layer.w, width, cfg.heads * out);
      layer.a_src.resize(cfg.heads, out);
      layer.a_dst.resize(cfg.heads, out);
      // The per-head attention vector [a_src; a_dst] is a 2F'-to-1 map.
      glorot(layer.a_src, 2 * out, 1);
      glorot(layer.a_dst, 2 * out, 1);
      model.gat_convs.push_back(std::move(layer));
    } else {
      GraphConvLayer layer;
      layer.w.resize(width, out);
      glorot(layer.w, width, out);
      model.convs.push_back(std::move(layer));
    }
    width = model.cfg.conv_out_width(static_cast<int>(i));
    model.conv_bns.push_back(make_bn(width));
  }

  auto make_linear = [&](int fan_in, int fan_out) {
    LinearLayer layer;
    layer.w.resize(fan_in, fan_out);
    glorot(layer.w, fan_in, fan_out);
    layer.b = Vector::Zero(fan_out);
    return layer;
  };
  model.fc1 = make_linear(width, cfg.mlp_widths[0]);
  model.fc1_bn = make_bn(cfg.mlp_widths[0]);
  model.fc2 = make_linear(cfg.mlp_widths[0], cfg.mlp_widths[1]);
  model.fc_out = make_linear(cfg.mlp_widths[1], cfg.classes);
  return model;
}

// ---------------------------------------------------------------------------
// Backward
// ---------------------------------------------------------------------------

namespace {

Matrix batchnorm_backward(const Matrix& grad, const BatchNormLayer& bn, const BatchNormCache& cache,
                          Vector& dgamma, Vector& dbeta) {
  const auto m = grad.rows();
  dgamma = grad.cwiseProduct(cache.xhat).colwise().sum().transpose();
  dbeta = grad.colwise().sum().transpose();
  const Matrix dxhat = grad * bn.gamma.asDiagonal();
  const Vector sum_dxhat = dxhat.colwise().sum().transpose();
  const Vector sum_dxhat_xhat = dxhat.cwiseProduct(cache.xhat).colwise().sum().transpose();
  Matrix dx = static_cast<Scalar>(m) * dxhat;
  dx.rowwise() -= sum_dxhat.transpose();
  dx -= cache.xhat * sum_dxhat_xhat.asDiagonal();
  dx *= 1.0 / static_cast<Scalar>(m);
  return dx * cache.inv_std.asDiagonal();
}

// Gradients for one attention layer. Returns dH.
Matrix gat_backward(const DirectedAdjacency& adj, const GatConvLayer& layer, const Matrix& input,
                    const GatCache& cache, Scalar negative_slope, const Matrix& dout,
                    Matrix& dw, Matrix& da_src, Matrix& da_dst, MultCounter* counter) {
  const int m = adj.node_count();
  const int heads = layer.heads();
  const int fp = layer.out_per_head();

  Matrix dz = Matrix::Zero(m, static_cast<Eigen::Index>(heads) * fp);
  Matrix dalpha(cache.alpha.rows(), heads);
  for (int v = 0; v < m; ++v)
    for (int e = adj.dst_offsets[v]; e < adj.dst_offsets[v + 1]; ++e) {
      const int u = adj.src[e];
      for (int hd = 0; hd < heads; ++hd) {
        const auto zu = cache.z.row(u).segment(static_cast<Eigen::Index>(hd) * fp, fp);
        const auto dov = dout.row(v).segment(static_cast<Eigen::Index>(hd) * fp, fp);
        dalpha(e, hd) = zu.dot(dov);
        dz.row(u).segment(static_cast<Eigen::Index>(hd) * fp, fp) += cache.alpha(e, hd) * dov;
      }
    }
  if (counter) counter->add(Stage::adjacency, 2 * adj.entries() * heads * fp);

  Matrix ds = Matrix::Zero(m, heads);
  Matrix dt = Matrix::Zero(m, heads);
  for (int v = 0; v < m; ++v) {
    const int begin = adj.dst_offsets[v];
    const int end = adj.dst_offsets[v + 1];
    for (int hd = 0; hd < heads; ++hd) {
      Scalar dot = 0;
      for (int e = begin; e < end; ++e) dot += cache.alpha(e, hd) * dalpha(e, hd);
      for (int e = begin; e < end; ++e) {
        const Scalar de = cache.alpha(e, hd) * (dalpha(e, hd) - dot);
        const Scalar dpre = cache.pre(e, hd) > 0 ? de : negative_slope * de;
        ds(adj.src[e], hd) += dpre;
        dt(v, hd) += dpre;
      }
    }
  }

  da_src.setZero(heads, fp);
  da_dst.setZero(heads, fp);
  for (int hd = 0; hd < heads; ++hd) {
    const auto zh = cache.z.middleCols(static_cast<Eigen::Index>(hd) * fp, fp);
    da_src.row(hd) = ds.col(hd).transpose() * zh;
    da_dst.row(hd) = dt.col(hd).transpose() * zh;
    for (int i = 0; i < m; ++i)
      dz.row(i).segment(static_cast<Eigen::Index>(hd) * fp, fp) +=
          ds(i, hd) * layer.a_src.row(hd) + dt(i, hd) * layer.a_dst.row(hd);
  }
  if (counter) counter->add(Stage::other, 4LL * m * heads * fp);

  const Matrix input_t = input.transpose();
  dw = dense_matmul(input_t, dz, counter, Stage::weight);
  const Matrix w_t = layer.w.transpose();
  return dense_matmul(dz, w_t, counter, Stage::weight);
}

}  // namespace

GradientSet backward(Model& model, const ForwardCache& cache, const Matrix& dlogits,
                     MultCounter* counter) {
  if (cache.convs.empty()) throw std::invalid_argument("backward: forward cache missing");
  const ModelConfig& cfg = model.cfg;

  // Gradients are accumulated per layer, then flattened in parameter order.
  const std::size_t conv_count = cfg.conv_widths.size();
  std::vector<Matrix> dconv_w(conv_count), dgat_w(conv_count), dgat_asrc(conv_count),
      dgat_adst(conv_count);
  std::vector<Vector> dbn_gamma(conv_count), dbn_beta(conv_count);

  // Classifier head.
  const Matrix fc2_act_t = cache.fc2_act.transpose();
  Matrix dfc_out_w = dense_matmul(fc2_act_t, dlogits, counter, Stage::weight);
  Vector dfc_out_b = dlogits.colwise().sum().transpose();
  const Matrix fc_out_w_t = model.fc_out.w.transpose();
  Matrix dfc2_act = dense_matmul(dlogits, fc_out_w_t, counter, Stage::weight);

  Matrix dfc2_pre = activation_backward(Activation::relu, cache.fc2_pre_act, dfc2_act);
  const Matrix fc1_act_t = cache.fc1_act.transpose();
  Matrix dfc2_w = dense_matmul(fc1_act_t, dfc2_pre, counter, Stage::weight);
  Vector dfc2_b = dfc2_pre.colwise().sum().transpose();
  const Matrix fc2_w_t = model.fc2.w.transpose();
  Matrix dfc1_act = dense_matmul(dfc2_pre, fc2_w_t, counter, Stage::weight);

  Matrix dfc1_post_bn = activation_backward(Activation::relu, cache.fc1_pre_act, dfc1_act);
  Vector dfc1_gamma, dfc1_beta;
  Matrix dfc1_pre_bn =
      batchnorm_backward(dfc1_post_bn, model.fc1_bn, cache.fc1_bn, dfc1_gamma, dfc1_beta);
  const Matrix pooled_t = cache.pooled.transpose();
  Matrix dfc1_w = dense_matmul(pooled_t, dfc1_pre_bn, counter, Stage::weight);
  Vector dfc1_b = dfc1_pre_bn.colwise().sum().transpose();
  const Matrix fc1_w_t = model.fc1.w.transpose();
  Matrix dpooled = dense_matmul(dfc1_pre_bn, fc1_w_t, counter, Stage::weight);

  // Un-pool: each node inherits its graph's row divided by the graph size.
  std::vector<int> counts(cache.graph_count, 0);
  for (int g : cache.graph_id) ++counts[g];
  Matrix dh(cache.conv_out.rows(), cache.conv_out.cols());
  for (Eigen::Index i = 0; i < dh.rows(); ++i)
    dh.row(i) = dpooled.row(cache.graph_id[i]) / counts[cache.graph_id[i]];

  for (int i = static_cast<int>(conv_count) - 1; i >= 0; --i) {
    const ConvCache& cc = cache.convs[i];
    Matrix dpost_bn = activation_backward(Activation::elu, cc.pre_act, dh);
    Matrix dpre_bn =
        batchnorm_backward(dpost_bn, model.conv_bns[i], cc.bn, dbn_gamma[i], dbn_beta[i]);
    if (cfg.variant == Variant::gat) {
      dh = gat_backward(cache.dadj, model.gat_convs[i], cc.input, cc.gat, cfg.negative_slope,
                        dpre_bn, dgat_w[i], dgat_asrc[i], dgat_adst[i], counter);
    } else if (cfg.variant == Variant::nvgcn) {
      const Matrix agg_t = cc.aggregated.transpose();
      dconv_w[i] = dense_matmul(agg_t, dpre_bn, counter, Stage::weight);
      const Matrix w_t = model.convs[i].w.transpose();
      const Matrix dagg = dense_matmul(dpre_bn, w_t, counter, Stage::weight);
      dh = spmm(cache.adj, dagg, counter, Stage::adjacency);
    } else {
      const Matrix scaled_t = cc.scaled_out.transpose();
      dconv_w[i] = dense_matmul(scaled_t, dpre_bn, counter, Stage::weight);
      const Matrix w_t = model.convs[i].w.transpose();
      const Matrix dscaled_out = dense_matmul(dpre_bn, w_t, counter, Stage::weight);
      const Matrix dagg = row_scale(cache.inv_sqrt_deg, dscaled_out, counter, Stage::deg_scale_post);
      const Matrix dscaled_in = spmm(cache.adj, dagg, counter, Stage::adjacency);
      dh = row_scale(cache.inv_sqrt_deg, dscaled_in, counter, Stage::deg_scale_pre);
    }
  }

  GradientSet grads;
  auto push = [&grads](const auto& tensor) {
    grads.emplace_back(Eigen::Map<const Vector>(tensor.data(), tensor.size()));
  };
  for (std::size_t i = 0; i < conv_count; ++i) {
    if (cfg.variant == Variant::gat) {
      push(dgat_w[i]);
      push(dgat_asrc[i]);
      push(dgat_adst[i]);
    } else {
      push(dconv_w[i]);
    }
    push(dbn_gamma[i]);
    push(dbn_beta[i]);
  }
  push(dfc1_w);
  push(dfc1_b);
  push(dfc1_gamma);
  push(dfc1_beta);
  push(dfc2_w);
  push(dfc2_b);
  push(dfc_out_w);
  push(dfc_out_b);
  return grads;
}

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

AdamState AdamState::init(const std::vector<ParamRef>& params) {
  AdamState state;
  state.m.reserve(params.size());
  state.v.reserve(params.size());
  for (const ParamRef& p : params) {
    state.m.push_back(Vector::Zero(p.size));
    state.v.push_back(Vector::Zero(p.size));
  }
  return state;
}

void adam_step(std::vector<ParamRef>& params, const GradientSet& grads, AdamState& state,
               const AdamConfig& cfg) {
  if (params.size() != grads.size() || params.size() != state.m.size())
    throw std::invalid_argument("adam_step: parameter/gradient/state size mismatch");
  state.t += 1;
  const Scalar bc1 = 1.0 - std::pow(cfg.beta1, static_cast<Scalar>(state.t));
  const Scalar bc2 = 1.0 - std::pow(cfg.beta2, static_cast<Scalar>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Eigen::Map<Vector> p(params[i].data, params[i].size);
    const Vector& g = grads[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g.cwiseProduct(g);
    const Vector m_hat = state.m[i] / bc1;
    const Vector v_hat = state.v[i] / bc2;
    p.array() -= cfg.lr * m_hat.array() / (v_hat.array().sqrt() + cfg.eps);
  }
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {

constexpr char kCkptMagic[4] = {'V', 'G', 'C', '1'};
constexpr std::uint8_t kCkptVersion = 1;

std::vector<BatchNormLayer*> bn_layers(Model& model) {
  std::vector<BatchNormLayer*> layers;
  for (BatchNormLayer& bn : model.conv_bns) layers.push_back(&bn);
  layers.push_back(&model.fc1_bn);
  return layers;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, Model& model, const AdamState& state) {
  detail::ByteWriter out;
  out.raw(kCkptMagic, 4);
  out.u8(kCkptVersion);
  const ModelConfig& cfg = model.cfg;
  out.u8(static_cast<std::uint8_t>(cfg.variant));
  out.u32(static_cast<std::uint32_t>(cfg.in_features));
  out.u32(static_cast<std::uint32_t>(cfg.classes));
  out.u32(static_cast<std::uint32_t>(cfg.heads));
  out.f64(cfg.self_loop_weight);
  out.f64(cfg.bn_eps);
  out.f64(cfg.bn_momentum);
  out.f64(cfg.negative_slope);
  out.u32(static_cast<std::uint32_t>(cfg.conv_widths.size()));
  for (int w : cfg.conv_widths) out.u32(static_cast<std::uint32_t>(w));
  out.u32(static_cast<std::uint32_t>(cfg.mlp_widths.size()));
  for (int w : cfg.mlp_widths) out.u32(static_cast<std::uint32_t>(w));

  const auto params = model.parameters();
  out.u32(static_cast<std::uint32_t>(params.size()));
  for (const ParamRef& p : params) {
    out.u64(static_cast<std::uint64_t>(p.size));
    for (std::int64_t i = 0; i < p.size; ++i) out.f64(p.data[i]);
  }
  const auto bns = bn_layers(model);
  out.u32(static_cast<std::uint32_t>(bns.size()));
  for (const BatchNormLayer* bn : bns) {
    out.u64(static_cast<std::uint64_t>(bn->running_mean.size()));
    for (Eigen::Index i = 0; i < bn->running_mean.size(); ++i) out.f64(bn->running_mean[i]);
    for (Eigen::Index i = 0; i < bn->running_var.size(); ++i) out.f64(bn->running_var[i]);
  }
  out.u64(static_cast<std::uint64_t>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (Eigen::Index j = 0; j < state.m[i].size(); ++j) out.f64(state.m[i][j]);
    for (Eigen::Index j = 0; j < state.v[i].size(); ++j) out.f64(state.v[i][j]);
  }
  out.save(path);
}

std::pair<Model, AdamState> load_checkpoint(const std::filesystem::path& path) {
  detail::ByteReader in(path);
  in.expect_magic(kCkptMagic, "VGC1 checkpoint");
  const std::uint8_t version = in.u8();
  if (version != kCkptVersion)
    throw FormatError(path.string() + ": unsupported checkpoint version " +
                      std::to_string(version));
  ModelConfig cfg;
  cfg.variant = static_cast<Variant>(in.u8());
  cfg.in_features = static_cast<int>(in.u32());
  cfg.classes = static_cast<int>(in.u32());
  cfg.heads = static_cast<int>(in.u32());
  cfg.self_loop_weight = in.f64();
  cfg.bn_eps = in.f64();
  cfg.bn_momentum = in.f64();
  cfg.negative_slope = in.f64();
  cfg.conv_widths.resize(in.u32());
  for (int& w : cfg.conv_widths) w = static_cast<int>(in.u32());
  cfg.mlp_widths.resize(in.u32());
  for (int& w : cfg.mlp_widths) w = static_cast<int>(in.u32());

  Model model = build_model(cfg, 0);
  auto params = model.parameters();
  const std::uint32_t param_count = in.u32();
  if (param_count != params.size()) throw FormatError(path.string() + ": parameter count mismatch");
  for (ParamRef& p : params) {
    const std::uint64_t size = in.u64();
    if (size != static_cast<std::uint64_t>(p.size))
      throw FormatError(path.string() + ": parameter size mismatch");
    for (std::int64_t i = 0; i < p.size; ++i) p.data[i] = in.f64();
  }
  const auto bns = bn_layers(model);
  const std::uint32_t bn_count = in.u32();
  if (bn_count != bns.size()) throw FormatError(path.string() + ": batch-norm count mismatch");
  for (BatchNormLayer* bn : bns) {
    const std::uint64_t size = in.u64();
    if (size != static_cast<std::uint64_t>(bn->running_mean.size()))
      throw FormatError(path.string() + ": batch-norm size mismatch");
    for (Eigen::Index i = 0; i < bn->running_mean.size(); ++i) bn->running_mean[i] = in.f64();
    for (Eigen::Index i = 0; i < bn->running_var.size(); ++i) bn->running_var[i] = in.f64();
  }
  AdamState state = AdamState::init(params);
  state.t = static_cast<std::int64_t>(in.u64());
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (Eigen::Index j = 0; j < state.m[i].size(); ++j) state.m[i][j] = in.f64();
    for (Eigen::Index j = 0; j < state.v[i].size(); ++j) state.v[i][j] = in.f64();
  }
  in.expect_end();
  return {std::move(model), std::move(state)};
}

}  // namespace vgcn
