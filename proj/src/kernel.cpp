#include "surropt/kernel.hpp"

#include <cmath>

#include "surropt/errors.hpp"

namespace surropt {

Kernel Kernel::rbf(double gamma) {
  Kernel k;
  k.kind = KernelKind::Rbf;
  k.gamma = gamma;
  k.validate();
  return k;
}

Kernel Kernel::linear() {
  Kernel k;
  k.kind = KernelKind::Linear;
  return k;
}

Kernel Kernel::polynomial(int degree, double coef) {
  Kernel k;
  k.kind = KernelKind::Polynomial;
  k.degree = degree;
  k.coef = coef;
  k.validate();
  return k;
}

void Kernel::validate() const {
  if (kind == KernelKind::Rbf && !(gamma > 0.0)) {
    throw ConfigError("rbf kernel requires gamma > 0");
  }
  if (kind == KernelKind::Polynomial && degree < 1) {
    throw ConfigError("polynomial kernel requires degree >= 1");
  }
}

KernelDerivs kernel_eval(const Kernel& kernel, const Vector& x,
                         const Vector& xi) {
  if (x.size() != xi.size()) {
    throw ShapeError("kernel_eval: x and xi must have equal length");
  }
  kernel.validate();
  const auto n = x.size();
  KernelDerivs out;
  switch (kernel.kind) {
    case KernelKind::Rbf: {
      const Vector diff = x - xi;
      const double k = std::exp(-kernel.gamma * diff.squaredNorm());
      out.value = k;
      out.grad = -2.0 * kernel.gamma * k * diff;
      out.hess = (4.0 * kernel.gamma * kernel.gamma * k) * (diff * diff.transpose());
      out.hess.diagonal().array() -= 2.0 * kernel.gamma * k;
      break;
    }
    case KernelKind::Linear: {
      out.value = x.dot(xi);
      out.grad = xi;
      out.hess = Matrix::Zero(n, n);
      break;
    }
    case KernelKind::Polynomial: {
      const double base = x.dot(xi) + kernel.coef;
      const int d = kernel.degree;
      out.value = std::pow(base, d);
      out.grad = (d * std::pow(base, d - 1)) * xi;
      if (d >= 2) {
        out.hess = (d * (d - 1) * std::pow(base, d - 2)) * (xi * xi.transpose());
      } else {
        out.hess = Matrix::Zero(n, n);
      }
      break;
    }
  }
  return out;
}

Kernel kernel_from_string(const std::string& kind, double gamma, int degree,
                          double coef) {
  if (kind == "rbf") return Kernel::rbf(gamma);
  if (kind == "linear") return Kernel::linear();
  if (kind == "polynomial") return Kernel::polynomial(degree, coef);
  throw ConfigError("unknown kernel '" + kind +
                    "' (expected rbf, linear or polynomial)");
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Rbf:
      return "rbf";
    case KernelKind::Linear:
      return "linear";
    case KernelKind::Polynomial:
      return "polynomial";
  }
  return "?";
}

}  // namespace surropt
