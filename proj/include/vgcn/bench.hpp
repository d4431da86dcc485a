#pragma once

#include "vgcn/graphstore.hpp"
#include "vgcn/nn.hpp"
#include "vgcn/train.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vgcn {

// Per-layer multiplication model. The adjacency stage is charged M*F,
// treating the edge count as O(M) for these near-constant-degree graphs.
struct CountModel {
  std::int64_t nodes = 0;         // M
  std::int64_t in_features = 0;   // F
  std::int64_t out_features = 0;  // F'
  bool with_degree = true;

  std::int64_t validate() const;
};

// with_degree: 3*M*F + M*F*F'; without: M*F + M*F*F'.
std::int64_t analytic_mult_count(const CountModel& model);

// 2 / (3 + F'/F) * 100: the share of multiplications removed by dropping
// the two degree scalings. Strictly decreasing in F'/F, bounded by 66.67.
Scalar reduction_percentage(Scalar f, Scalar f_prime);

struct StageCounts {
  std::int64_t deg_scale_pre = 0;
  std::int64_t adjacency = 0;
  std::int64_t deg_scale_post = 0;
  std::int64_t weight = 0;

  std::int64_t total() const { return deg_scale_pre + adjacency + deg_scale_post + weight; }
};

// One forward of the convolution variant over the graph's adjacency with
// seeded random features/weights, instrumented per stage:
//   gcn   -> {M*F, nnz*F, M*F, M*F*F'}
//   nvgcn -> {nnz*F, M*F*F'} (degree stages zero)
StageCounts measured_layer_counts(const GraphRecord& graph, int f, int f_prime, Variant variant,
                                  Scalar self_loop_weight = 6.0, std::uint64_t seed = 0);

struct TimeBenchConfig {
  int epochs = 3;   // measured epochs per run
  int warmup = 1;   // discarded leading epochs
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  int batch_size = 128;
  Scalar lr = 1e-3;
};

struct TimeSeries {
  std::string name;  // gcn / nvgcn / gat1 / gat2
  std::uint64_t seed = 0;
  std::vector<double> epoch_seconds;  // measured epochs only
  double mean_seconds = 0;
};

// Trains each variant on the same corpus under identical configs, one run
// per seed, and reports steady-state per-epoch wall times (warm-up epochs
// discarded). Runs serially.
std::vector<TimeSeries> epoch_time_bench(const std::vector<GraphRecord>& records,
                                         const TimeBenchConfig& cfg);

}  // namespace vgcn
