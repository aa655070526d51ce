#pragma once

#include <optional>
#include <string>

#include "surropt/linear_composite.hpp"
#include "surropt/sqp.hpp"
#include "surropt/surrogate.hpp"

namespace surropt {

/// Optimization run description loaded from a JSON config file; see
/// docs/file_formats.md. Unknown keys are rejected.
struct ProblemConfig {
  /// Path to a model document, or "analytic:<test function>" /
  /// "analytic:identity:<n>" for exact surrogates.
  std::string surrogate;
  Vector output_cost;  // c
  Vector input_cost;   // d, may be empty
  double constant = 0.0;
  std::vector<OutputBound> output_bounds;
  std::optional<Box> x_bounds;
  Vector x0;
  SolverOptions solver;
  std::optional<std::string> validation_function;
};

ProblemConfig load_problem_config(const std::string& path);

/// Resolves the surrogate reference; relative model paths are taken against
/// base_dir (the config file's directory).
SurrogatePtr resolve_surrogate(const std::string& ref,
                               const std::string& base_dir);

/// Convenience: the LinearCompositeProblem described by the config.
LinearCompositeProblem to_linear_composite(const ProblemConfig& config);

}  // namespace surropt
