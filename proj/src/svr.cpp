#include "surropt/svr.hpp"

#include <cmath>
#include <utility>

#include "surropt/errors.hpp"

namespace surropt {

SvrModel::SvrModel(Matrix support_vectors, Vector dual_coeffs, double bias,
                   Kernel kernel)
    : support_vectors_(std::move(support_vectors)),
      dual_coeffs_(std::move(dual_coeffs)),
      bias_(bias),
      kernel_(kernel) {
  if (support_vectors_.rows() == 0) {
    throw ConfigError("SvrModel: empty support set");
  }
  if (dual_coeffs_.size() != support_vectors_.rows()) {
    throw ShapeError("SvrModel: dual_coeffs length must match support vectors");
  }
  if (!support_vectors_.allFinite() || !dual_coeffs_.allFinite() ||
      !std::isfinite(bias_)) {
    throw NumericError("SvrModel: non-finite parameter");
  }
  kernel_.validate();
}

Vector SvrModel::value(const Vector& x) const {
  check_input(x);
  double y = bias_;
  for (Eigen::Index i = 0; i < support_vectors_.rows(); ++i) {
    y += dual_coeffs_[i] *
         kernel_eval(kernel_, x, support_vectors_.row(i).transpose()).value;
  }
  Vector out(1);
  out[0] = y;
  return out;
}

EvalTriple SvrModel::eval(const Vector& x) const {
  check_input(x);
  const auto n = x.size();
  double y = bias_;
  Vector grad = Vector::Zero(n);
  Matrix hess = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < support_vectors_.rows(); ++i) {
    const KernelDerivs kd =
        kernel_eval(kernel_, x, support_vectors_.row(i).transpose());
    const double c = dual_coeffs_[i];
    y += c * kd.value;
    grad.noalias() += c * kd.grad;
    hess.noalias() += c * kd.hess;
  }
  EvalTriple out;
  out.value = Vector::Constant(1, y);
  out.jacobian = grad.transpose();
  out.hessians = {0.5 * (hess + hess.transpose())};
  return out;
}

}  // namespace surropt
