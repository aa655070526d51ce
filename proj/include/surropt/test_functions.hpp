#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "surropt/surrogate.hpp"

namespace surropt {

/// Benchmark functions with known global minima, each with closed-form
/// gradient and Hessian so they can double as exact surrogates.
struct TestFunction {
  std::string name;
  int dim = 0;
  double min_value = 0.0;
  std::vector<Vector> minimizers;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;

  /// Distance from x to the nearest known minimizer.
  double distance_to_minimizer(const Vector& x) const;
};

/// The six supported names: sphere, quadratic, six_hump_camel, schaffer2,
/// griewank, ackley.
const std::vector<TestFunction>& test_functions();
const TestFunction* find_test_function(std::string_view name);
const TestFunction& test_function(std::string_view name);  // ConfigError if unknown

/// Value-only dispatch; throws ShapeError on wrong input length.
double test_function_eval(std::string_view name, const Vector& x);

/// m = 1 exact surrogate y = f(x) with analytic derivatives.
std::shared_ptr<const SurrogateModel> make_test_function_surrogate(
    const TestFunction& fn);

}  // namespace surropt
