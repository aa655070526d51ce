#pragma once

#include <string>

#include "surropt/types.hpp"

namespace surropt {

enum class KernelKind { Rbf, Linear, Polynomial };

/// Kernel K(x, xi) with closed-form derivatives in the first argument.
struct Kernel {
  KernelKind kind = KernelKind::Rbf;
  double gamma = 1.0;  // rbf: exp(-gamma * |x - xi|^2)
  int degree = 2;      // polynomial: (x' xi + coef)^degree
  double coef = 0.0;

  static Kernel rbf(double gamma);
  static Kernel linear();
  static Kernel polynomial(int degree, double coef = 0.0);

  /// Throws ConfigError on invalid parameters (gamma <= 0, degree < 1).
  void validate() const;
};

struct KernelDerivs {
  double value;
  Vector grad;  // d K / d x
  Matrix hess;  // d^2 K / d x dx', symmetric
};

KernelDerivs kernel_eval(const Kernel& kernel, const Vector& x,
                         const Vector& xi);

Kernel kernel_from_string(const std::string& kind, double gamma, int degree,
                          double coef);
std::string to_string(KernelKind kind);

}  // namespace surropt
