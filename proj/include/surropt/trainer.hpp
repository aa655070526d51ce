#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "surropt/dataset.hpp"
#include "surropt/mlp.hpp"

namespace surropt {

struct TrainConfig {
  std::vector<int> hidden_dims;
  Activation activation = Activation::Swish;
  double learning_rate = 1e-3;
  int epochs = 5000;
  int batch_size = 64;
  std::uint64_t seed = 0;
  int early_stop_patience = 200;

  void validate() const;  // ConfigError on non-positive hyperparameters
};

struct EpochStats {
  int epoch = 0;
  double train_mse = 0.0;
  double val_mse = 0.0;
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_mse = 0.0;
};

/// Mini-batch Adam on mean-squared error with z-score standardization of
/// inputs and targets. The standardization is folded back into the first and
/// last affine layers on export, so the returned model consumes raw units.
/// Returns the weights at the best validation loss; deterministic per seed.
TrainResult train_mlp(const Dataset& data, const TrainConfig& config);

/// History CSV: header epoch,train_mse,val_mse.
void write_history_csv(const std::vector<EpochStats>& history, std::ostream& out);

}  // namespace surropt
