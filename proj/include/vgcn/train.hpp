#pragma once

#include "vgcn/graphstore.hpp"
#include "vgcn/nn.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

namespace vgcn {

struct TrainConfig {
  int epochs = 300;
  int patience = 10;  // consecutive epochs without validation improvement
  Scalar lr = 1e-3;
  int batch_size = 128;  // graphs per batch
  Scalar test_fraction = 0.2;
  std::uint64_t seed = 0;

  AdamConfig adam() const { return {lr, 0.9, 0.999, 1e-8}; }
};

struct EpochMetrics {
  int epoch = 0;
  Scalar train_loss = 0;
  Scalar train_accuracy = 0;
  Scalar val_accuracy = 0;
  double seconds = 0;             // forward+backward+update only, no IO
  std::int64_t mult_count = 0;    // cumulative scalar multiplications
};

// Seeded shuffle, then split off round(n * test_fraction) records as the
// second element. Disjoint and exhaustive.
std::pair<std::vector<GraphRecord>, std::vector<GraphRecord>> split_dataset(
    const std::vector<GraphRecord>& records, Scalar test_fraction, std::uint64_t seed);

// Model plus optimizer state and the multiplication counter they share.
struct Trainer {
  Model model;
  AdamState adam;
  AdamConfig adam_cfg;
  MultCounter counter;

  static Trainer make(Model model, const TrainConfig& cfg);
};

// One pass over seeded-shuffled batches: forward, loss, backward, update.
// val_accuracy is left at -1 for the caller to fill. Throws NumericError on
// a non-finite loss.
EpochMetrics train_epoch(Trainer& trainer, const std::vector<GraphRecord>& train_set,
                         const TrainConfig& cfg, int epoch);

// Fraction of graphs whose argmax logit equals the label, in eval mode.
// Invariant to batch size and record order.
Scalar evaluate(Model& model, const std::vector<GraphRecord>& records, int batch_size = 128);

// Stop after `patience` consecutive observations without a strictly better
// value.
class EarlyStopper {
 public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  // Returns true when training should stop after this observation.
  bool observe(Scalar value) {
    if (value > best_) {
      best_ = value;
      bad_streak_ = 0;
    } else {
      ++bad_streak_;
    }
    return bad_streak_ >= patience_;
  }
  Scalar best() const { return best_; }

 private:
  int patience_;
  int bad_streak_ = 0;
  Scalar best_ = -std::numeric_limits<Scalar>::infinity();
};

struct FitResult {
  Model best_model;
  AdamState best_adam;
  std::vector<EpochMetrics> history;
  int best_epoch = 0;
  Scalar best_val_accuracy = 0;
};

// Splits data, trains with early stopping, and returns the checkpoint of
// the best validation epoch. Per-epoch lines go to `progress` when given.
FitResult fit(Model model, const std::vector<GraphRecord>& data, const TrainConfig& cfg,
              std::ostream* progress = nullptr);

}  // namespace vgcn
