#include "vgcn/bench.hpp"

#include <random>
#include <stdexcept>

namespace vgcn {

std::int64_t CountModel::validate() const {
  if (nodes <= 0 || in_features <= 0 || out_features <= 0)
    throw std::invalid_argument("count model dimensions must be positive");
  return nodes;
}

std::int64_t analytic_mult_count(const CountModel& model) {
  model.validate();
  const std::int64_t mf = model.nodes * model.in_features;
  const std::int64_t mff = mf * model.out_features;
  return model.with_degree ? 3 * mf + mff : mf + mff;
}

Scalar reduction_percentage(Scalar f, Scalar f_prime) {
  if (f <= 0 || f_prime <= 0)
    throw std::invalid_argument("reduction_percentage: features must be positive");
  return 2.0 / (3.0 + f_prime / f) * 100.0;
}

StageCounts measured_layer_counts(const GraphRecord& graph, int f, int f_prime, Variant variant,
                                  Scalar self_loop_weight, std::uint64_t seed) {
  if (variant == Variant::gat)
    throw std::invalid_argument("measured_layer_counts covers the gcn and nvgcn stages");
  const int m = graph.node_count();
  const std::vector<std::pair<int, int>> edges = to_int_edges(graph.edges);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> dist(-1.0, 1.0);
  Matrix h(m, f), w(f, f_prime);
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = dist(rng);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);

  MultCounter counter;
  if (variant == Variant::gcn) {
    const SparseAdjacency adj = sparse_from_edges(edges, m, 1.0);
    const Vector inv_sqrt_deg = adj.row_sums().array().rsqrt().matrix();
    const Matrix scaled_in = row_scale(inv_sqrt_deg, h, &counter, Stage::deg_scale_pre);
    const Matrix aggregated = spmm(adj, scaled_in, &counter, Stage::adjacency);
    const Matrix scaled_out = row_scale(inv_sqrt_deg, aggregated, &counter, Stage::deg_scale_post);
    dense_matmul(scaled_out, w, &counter, Stage::weight);
  } else {
    const SparseAdjacency adj = sparse_from_edges(edges, m, self_loop_weight);
    const Matrix aggregated = spmm(adj, h, &counter, Stage::adjacency);
    dense_matmul(aggregated, w, &counter, Stage::weight);
  }
  return {counter.stage(Stage::deg_scale_pre), counter.stage(Stage::adjacency),
          counter.stage(Stage::deg_scale_post), counter.stage(Stage::weight)};
}

std::vector<TimeSeries> epoch_time_bench(const std::vector<GraphRecord>& records,
                                         const TimeBenchConfig& cfg) {
  if (records.empty()) throw std::invalid_argument("epoch_time_bench: empty corpus");
  const int in_features = records.front().feature_width();

  struct Entry {
    std::string name;
    ModelConfig model;
  };
  std::vector<Entry> entries;
  entries.push_back({"gcn", default_config(Variant::gcn, in_features)});
  entries.push_back({"nvgcn", default_config(Variant::nvgcn, in_features)});
  ModelConfig gat1 = default_config(Variant::gat, in_features);
  gat1.heads = 1;
  entries.push_back({"gat1", gat1});
  entries.push_back({"gat2", default_config(Variant::gat, in_features)});

  TrainConfig train_cfg;
  train_cfg.batch_size = cfg.batch_size;
  train_cfg.lr = cfg.lr;

  std::vector<TimeSeries> series;
  for (std::uint64_t seed : cfg.seeds) {
    for (const Entry& entry : entries) {
      train_cfg.seed = seed;
      Trainer trainer = Trainer::make(build_model(entry.model, seed), train_cfg);
      TimeSeries ts;
      ts.name = entry.name;
      ts.seed = seed;
      for (int epoch = 0; epoch < cfg.warmup + cfg.epochs; ++epoch) {
        const EpochMetrics metrics = train_epoch(trainer, records, train_cfg, epoch);
        if (epoch >= cfg.warmup) ts.epoch_seconds.push_back(metrics.seconds);
      }
      for (double s : ts.epoch_seconds) ts.mean_seconds += s;
      ts.mean_seconds /= static_cast<double>(ts.epoch_seconds.size());
      series.push_back(std::move(ts));
    }
  }
  return series;
}

}  // namespace vgcn
