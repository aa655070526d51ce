#pragma once

#include <functional>
#include <memory>
#include <string>

#include "surropt/types.hpp"

namespace surropt {

/// Differentiable surrogate s: R^n -> R^m. Models are immutable after
/// construction; eval() and value() are pure, so one model instance may be
/// shared by any number of concurrent callers.
class SurrogateModel {
 public:
  virtual ~SurrogateModel() = default;

  virtual int input_dim() const = 0;
  virtual int output_dim() const = 0;
  virtual std::string kind() const = 0;

  /// Forward pass only; cheaper than eval() where derivatives are unused
  /// (line search, convergence checks).
  virtual Vector value(const Vector& x) const = 0;

  /// Value, Jacobian and per-output Hessians. All returned Hessians are
  /// exactly symmetric.
  virtual EvalTriple eval(const Vector& x) const = 0;

 protected:
  /// Shared precondition: dimension match and finite entries.
  void check_input(const Vector& x) const;
};

using SurrogatePtr = std::shared_ptr<const SurrogateModel>;

/// Test double and analytic-pipeline adapter: wraps a closed-form function
/// that supplies its own exact derivatives.
class AnalyticAdapter final : public SurrogateModel {
 public:
  using EvalFn = std::function<EvalTriple(const Vector&)>;

  AnalyticAdapter(int input_dim, int output_dim, EvalFn fn,
                  std::string label = "analytic");

  /// y = x (m = n); Jacobian I, Hessians 0.
  static AnalyticAdapter identity(int n);

  int input_dim() const override { return input_dim_; }
  int output_dim() const override { return output_dim_; }
  std::string kind() const override { return label_; }
  Vector value(const Vector& x) const override;
  EvalTriple eval(const Vector& x) const override;

 private:
  int input_dim_;
  int output_dim_;
  EvalFn fn_;
  std::string label_;
};

}  // namespace surropt
