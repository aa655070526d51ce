#include "surropt/activation.hpp"

#include <cmath>

#include "surropt/errors.hpp"

namespace surropt {

namespace {

// Overflow-safe logistic function.
double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

ActivationDerivs activation_eval(Activation kind, double z) {
  switch (kind) {
    case Activation::Swish: {
      const double s = logistic(z);
      const double s1 = s * (1.0 - s);
      const double s2 = s1 * (1.0 - 2.0 * s);
      return {z * s, s + z * s1, 2.0 * s1 + z * s2};
    }
    case Activation::Tanh: {
      const double t = std::tanh(z);
      const double sech2 = 1.0 - t * t;
      return {t, sech2, -2.0 * t * sech2};
    }
    case Activation::Sigmoid: {
      const double s = logistic(z);
      const double s1 = s * (1.0 - s);
      return {s, s1, s1 * (1.0 - 2.0 * s)};
    }
  }
  throw ConfigError("unknown activation kind");
}

Activation activation_from_string(const std::string& name) {
  if (name == "swish") return Activation::Swish;
  if (name == "tanh") return Activation::Tanh;
  if (name == "sigmoid") return Activation::Sigmoid;
  throw ConfigError("unknown activation '" + name +
                    "' (expected swish, tanh or sigmoid)");
}

std::string to_string(Activation kind) {
  switch (kind) {
    case Activation::Swish:
      return "swish";
    case Activation::Tanh:
      return "tanh";
    case Activation::Sigmoid:
      return "sigmoid";
  }
  return "?";
}

}  // namespace surropt
