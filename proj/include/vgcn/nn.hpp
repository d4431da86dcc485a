#pragma once

#include "vgcn/graphstore.hpp"
#include "vgcn/linalg.hpp"
#include "vgcn/types.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace vgcn {

enum class Variant { gcn, nvgcn, gat };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Widths chain in -> conv outputs -> pooled head. For the gat variant,
// conv_widths are per-head; the concatenated output is heads * width.
struct ModelConfig {
  Variant variant = Variant::nvgcn;
  int in_features = 3;
  int classes = 10;
  int heads = 2;
  Scalar self_loop_weight = 6.0;  // nvgcn adjacency diagonal
  std::vector<int> conv_widths;
  std::vector<int> mlp_widths;
  Scalar bn_eps = 1e-5;
  Scalar bn_momentum = 0.1;
  Scalar negative_slope = 0.2;  // LeakyReLU slope inside attention

  int conv_out_width(int i) const {
    return variant == Variant::gat ? conv_widths[i] * heads : conv_widths[i];
  }
};

// The benchmark architecture: three convolutions with batch norm (gat:
// 3->32x2, 64->64x2, 128->64x2; gcn/nvgcn mirror the concatenated widths
// in->64->128->128), global mean pooling, Linear 128->32 + BN, Linear
// 32->32, Linear 32->classes.
ModelConfig default_config(Variant variant, int in_features);

enum class Mode { train, eval };
enum class Activation { identity, relu, elu };

Matrix apply_activation(Activation act, const Matrix& x);

// ---------------------------------------------------------------------------
// Layers
// ---------------------------------------------------------------------------

struct GraphConvLayer {
  Matrix w;  // F x F'
};

struct GatConvLayer {
  Matrix w;      // F x heads*F'
  Matrix a_src;  // heads x F'
  Matrix a_dst;  // heads x F'
  int heads() const { return static_cast<int>(a_src.rows()); }
  int out_per_head() const { return static_cast<int>(a_src.cols()); }
};

struct BatchNormLayer {
  Vector gamma, beta;
  Vector running_mean, running_var;
  Scalar eps = 1e-5;
  Scalar momentum = 0.1;
};

struct LinearLayer {
  Matrix w;  // F x F'
  Vector b;  // F'
};

// Directed neighborhoods for attention: for every node the in-neighbor list
// including the node itself, grouped by destination.
struct DirectedAdjacency {
  std::vector<int> dst_offsets;  // M+1
  std::vector<int> src;          // grouped by destination, sorted
  int node_count() const { return static_cast<int>(dst_offsets.size()) - 1; }
  std::int64_t entries() const { return static_cast<std::int64_t>(src.size()); }

  static DirectedAdjacency build(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                 int node_count);
};

// ---------------------------------------------------------------------------
// Forward operations
// ---------------------------------------------------------------------------

// sigma(A_norm H W) on an already degree-normalized adjacency (self-loop
// weight 1). The accounting mirrors the staged decomposition: the two
// baked-in degree scalings are charged M*F each next to the adjacency
// (nnz*F) and weight (M*F*F') stages.
Matrix gcn_forward(const SparseAdjacency& adj_norm, const Matrix& h, const Matrix& w,
                   Activation act = Activation::identity, MultCounter* counter = nullptr);

// sigma(A_dt H W) on a raw adjacency with constant diagonal (no degree
// normalization); charges only the adjacency and weight stages.
Matrix nvgcn_forward(const SparseAdjacency& adj_dt, const Matrix& h, const Matrix& w,
                     Activation act = Activation::identity, MultCounter* counter = nullptr);

struct GatCache {
  Matrix z;      // M x heads*F'
  Matrix s, t;   // M x heads attention logit halves
  Matrix pre;    // entries x heads, attention logits before LeakyReLU
  Matrix alpha;  // entries x heads, softmax over each destination
};

// Multi-head attention aggregation; heads are concatenated, no outer
// activation. Neighborhoods always include the node itself. Charges
// M*F*(heads*F') to the weight stage, 2*M*heads*F' for the logit dot
// products (other), and entries*heads*F' to the adjacency stage.
Matrix gat_forward(const DirectedAdjacency& adj, const Matrix& h, const GatConvLayer& layer,
                   Scalar negative_slope, MultCounter* counter = nullptr,
                   GatCache* cache = nullptr);

struct BatchNormCache {
  Matrix xhat;
  Vector inv_std;
};

// Train mode normalizes per feature over all rows (biased variance) and
// updates the running stats; eval mode uses the running stats.
Matrix batchnorm_forward(const Matrix& h, BatchNormLayer& bn, Mode mode,
                         BatchNormCache* cache = nullptr);

// Row g of the result is the mean of the rows with graph_id g.
Matrix global_mean_pool(const Matrix& h, const std::vector<int>& graph_id, int graph_count);

// Mean negative log-softmax likelihood and its logit gradient
// (softmax - onehot)/G.
std::pair<Scalar, Matrix> cross_entropy(const Matrix& logits, const std::vector<int>& labels);

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct ParamRef {
  Scalar* data;
  std::int64_t size;
};

using GradientSet = std::vector<Vector>;  // aligned with Model::parameters()

struct ConvCache {
  Matrix input;
  Matrix scaled_in;   // gcn only
  Matrix aggregated;  // spmm output (gcn: of the scaled input)
  Matrix scaled_out;  // gcn only
  Matrix pre_bn;
  BatchNormCache bn;
  Matrix pre_act;
  GatCache gat;
};

struct ForwardCache {
  SparseAdjacency adj;     // gcn (unit diagonal) / nvgcn (weighted diagonal)
  Vector inv_sqrt_deg;     // gcn
  DirectedAdjacency dadj;  // gat
  std::vector<int> graph_id;
  int graph_count = 0;
  std::vector<ConvCache> convs;
  Matrix conv_out;
  Matrix pooled;
  Matrix fc1_pre_bn;
  BatchNormCache fc1_bn;
  Matrix fc1_pre_act;
  Matrix fc1_act;
  Matrix fc2_pre_act;
  Matrix fc2_act;
};

struct Model {
  ModelConfig cfg;
  std::vector<GraphConvLayer> convs;
  std::vector<GatConvLayer> gat_convs;
  std::vector<BatchNormLayer> conv_bns;
  LinearLayer fc1;
  BatchNormLayer fc1_bn;
  LinearLayer fc2;
  LinearLayer fc_out;

  // Stable enumeration of trainable tensors; the optimizer state and the
  // checkpoint layout follow this order.
  std::vector<ParamRef> parameters();
  std::int64_t parameter_count();

  Matrix forward(const Batch& batch, Mode mode, MultCounter* counter = nullptr,
                 ForwardCache* cache = nullptr);
};

// Glorot-uniform initialization from a seeded generator; identical seeds
// produce bit-identical states.
Model build_model(const ModelConfig& cfg, std::uint64_t seed);

// Exact reverse-mode gradients for every trainable tensor, given the cache
// of a train-mode forward and the loss gradient w.r.t. the logits.
GradientSet backward(Model& model, const ForwardCache& cache, const Matrix& dlogits,
                     MultCounter* counter = nullptr);

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

struct AdamConfig {
  Scalar lr = 1e-3;
  Scalar beta1 = 0.9;
  Scalar beta2 = 0.999;
  Scalar eps = 1e-8;
};

struct AdamState {
  std::int64_t t = 0;
  std::vector<Vector> m, v;  // aligned with Model::parameters()

  static AdamState init(const std::vector<ParamRef>& params);
};

// Standard bias-corrected first/second-moment update.
void adam_step(std::vector<ParamRef>& params, const GradientSet& grads, AdamState& state,
               const AdamConfig& cfg);

// ---------------------------------------------------------------------------
// Checkpoints ("VGC1": config + parameters + batch-norm running stats +
// optimizer state, fixed little-endian)
// ---------------------------------------------------------------------------

void save_checkpoint(const std::filesystem::path& path, Model& model, const AdamState& state);
std::pair<Model, AdamState> load_checkpoint(const std::filesystem::path& path);

}  // namespace vgcn
