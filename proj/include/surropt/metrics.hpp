#pragma once

#include "surropt/types.hpp"

namespace surropt {

struct FitMetrics {
  Vector pearson_r;           // per output column
  double mse = 0.0;           // over all entries
  Vector max_relative_error;  // per output, entries with |target| > 1e-12
};

/// Throws NumericError when a target column has zero variance (Pearson R is
/// undefined there).
FitMetrics fit_metrics(const Matrix& pred, const Matrix& target);

}  // namespace surropt
