#include "vgcn/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

namespace vgcn {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t epoch_seed(std::uint64_t seed, int epoch) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(epoch + 1);
}

int argmax_row(const Matrix& logits, Eigen::Index row) {
  Eigen::Index best = 0;
  logits.row(row).maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

std::pair<std::vector<GraphRecord>, std::vector<GraphRecord>> split_dataset(
    const std::vector<GraphRecord>& records, Scalar test_fraction, std::uint64_t seed) {
  if (records.empty()) throw std::invalid_argument("split_dataset: empty record set");
  if (test_fraction <= 0 || test_fraction >= 1)
    throw std::invalid_argument("split_dataset: test fraction must be in (0,1)");
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto test_count = static_cast<std::size_t>(
      std::lround(test_fraction * static_cast<double>(records.size())));
  const std::size_t train_count = records.size() - test_count;
  std::pair<std::vector<GraphRecord>, std::vector<GraphRecord>> split;
  split.first.reserve(train_count);
  split.second.reserve(test_count);
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < train_count ? split.first : split.second).push_back(records[order[i]]);
  return split;
}

Trainer Trainer::make(Model model, const TrainConfig& cfg) {
  Trainer trainer{std::move(model), {}, cfg.adam(), {}};
  trainer.adam = AdamState::init(trainer.model.parameters());
  return trainer;
}

EpochMetrics train_epoch(Trainer& trainer, const std::vector<GraphRecord>& train_set,
                         const TrainConfig& cfg, int epoch) {
  if (train_set.empty()) throw std::invalid_argument("train_epoch: empty training set");
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(epoch_seed(cfg.seed, epoch));
  std::shuffle(order.begin(), order.end(), rng);

  EpochMetrics metrics;
  metrics.epoch = epoch;
  metrics.val_accuracy = -1;
  Scalar loss_sum = 0;
  std::int64_t correct = 0;

  auto params = trainer.model.parameters();
  for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
    const std::size_t end = std::min(order.size(), start + cfg.batch_size);
    std::vector<const GraphRecord*> members;
    members.reserve(end - start);
    for (std::size_t i = start; i < end; ++i) members.push_back(&train_set[order[i]]);
    const Batch batch = batch_graphs(members);

    const auto t0 = Clock::now();
    ForwardCache cache;
    const Matrix logits = trainer.model.forward(batch, Mode::train, &trainer.counter, &cache);
    const auto [loss, dlogits] = cross_entropy(logits, batch.labels);
    const GradientSet grads = backward(trainer.model, cache, dlogits, &trainer.counter);
    adam_step(params, grads, trainer.adam, trainer.adam_cfg);
    metrics.seconds += std::chrono::duration<double>(Clock::now() - t0).count();

    if (!std::isfinite(loss))
      throw NumericError("train_epoch: non-finite loss " + std::to_string(loss) + " at epoch " +
                         std::to_string(epoch) + ", batch starting " + std::to_string(start));
    loss_sum += loss * static_cast<Scalar>(batch.graph_count());
    for (int g = 0; g < batch.graph_count(); ++g)
      if (argmax_row(logits, g) == batch.labels[g]) ++correct;
  }

  metrics.train_loss = loss_sum / static_cast<Scalar>(train_set.size());
  metrics.train_accuracy = static_cast<Scalar>(correct) / static_cast<Scalar>(train_set.size());
  metrics.mult_count = trainer.counter.total();
  return metrics;
}

Scalar evaluate(Model& model, const std::vector<GraphRecord>& records, int batch_size) {
  if (records.empty()) throw std::invalid_argument("evaluate: empty record set");
  std::int64_t correct = 0;
  for (std::size_t start = 0; start < records.size(); start += batch_size) {
    const std::size_t end = std::min(records.size(), start + batch_size);
    std::vector<const GraphRecord*> members;
    members.reserve(end - start);
    for (std::size_t i = start; i < end; ++i) members.push_back(&records[i]);
    const Batch batch = batch_graphs(members);
    const Matrix logits = model.forward(batch, Mode::eval);
    for (int g = 0; g < batch.graph_count(); ++g)
      if (argmax_row(logits, g) == batch.labels[g]) ++correct;
  }
  return static_cast<Scalar>(correct) / static_cast<Scalar>(records.size());
}

FitResult fit(Model model, const std::vector<GraphRecord>& data, const TrainConfig& cfg,
              std::ostream* progress) {
  if (cfg.patience > cfg.epochs) throw std::invalid_argument("fit: patience exceeds epochs");
  auto [train_set, val_set] = split_dataset(data, cfg.test_fraction, cfg.seed);
  if (val_set.empty()) throw std::invalid_argument("fit: validation split is empty");

  Trainer trainer = Trainer::make(std::move(model), cfg);
  FitResult result;
  result.best_model = trainer.model;
  result.best_adam = trainer.adam;
  result.best_val_accuracy = -1;
  EarlyStopper stopper(cfg.patience);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    EpochMetrics metrics = train_epoch(trainer, train_set, cfg, epoch);
    metrics.val_accuracy = evaluate(trainer.model, val_set, cfg.batch_size);
    result.history.push_back(metrics);
    if (progress)
      (*progress) << "epoch=" << metrics.epoch << " train_loss=" << metrics.train_loss
                  << " train_acc=" << metrics.train_accuracy
                  << " val_acc=" << metrics.val_accuracy << " mults=" << metrics.mult_count
                  << " seconds=" << metrics.seconds << "\n";
    if (metrics.val_accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = metrics.val_accuracy;
      result.best_epoch = epoch;
      result.best_model = trainer.model;
      result.best_adam = trainer.adam;
    }
    if (stopper.observe(metrics.val_accuracy)) break;
  }
  return result;
}

}  // namespace vgcn
