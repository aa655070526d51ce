#pragma once

#include <string>

namespace surropt {

/// Twice-differentiable activations; ReLU is deliberately absent (its second
/// derivative does not exist at 0, which breaks exact Hessian propagation).
enum class Activation { Swish, Tanh, Sigmoid };

struct ActivationDerivs {
  double value;
  double d1;
  double d2;
};

/// Value and exact first/second derivatives at z.
ActivationDerivs activation_eval(Activation kind, double z);

/// Parses "swish" | "tanh" | "sigmoid"; throws ConfigError otherwise.
Activation activation_from_string(const std::string& name);
std::string to_string(Activation kind);

}  // namespace surropt
