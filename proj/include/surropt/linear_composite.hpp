#pragma once

#include <optional>
#include <vector>

#include "surropt/nlp.hpp"

namespace surropt {

struct OutputBound {
  std::optional<double> lo;
  std::optional<double> hi;
};

/// Linear objective over (x, y) with box constraints on selected outputs:
///   min c'y + d'x + const   s.t.  lo_j <= y_j <= hi_j  (where given).
/// This is the shape of operating-cost problems whose state variables are
/// surrogate outputs (duties, purities) with purity-style bounds.
struct LinearCompositeProblem {
  Vector output_cost;                      // c, length m
  Vector input_cost;                       // d, length n (empty -> zeros)
  double constant = 0.0;
  std::vector<OutputBound> output_bounds;  // length m or empty
  std::optional<Box> x_bounds;
};

/// Expands each output bound into inequality entries lo - y_j <= 0 and
/// y_j - hi <= 0; all second partials are exactly zero.
NlpProblem to_nlp(const LinearCompositeProblem& problem, int n, int m);

}  // namespace surropt
