#pragma once

#include "surropt/kernel.hpp"
#include "surropt/surrogate.hpp"

namespace surropt {

/// Kernel support-vector regression, y = sum_i coeff_i K(x, x_i) + bias.
/// Derivatives are the coefficient-weighted sums of the kernel derivatives.
class SvrModel final : public SurrogateModel {
 public:
  /// support_vectors: one row per support vector; dual_coeffs holds the
  /// (alpha_i - alpha_i*) weights, one per row.
  SvrModel(Matrix support_vectors, Vector dual_coeffs, double bias,
           Kernel kernel);

  int input_dim() const override { return static_cast<int>(support_vectors_.cols()); }
  int output_dim() const override { return 1; }
  std::string kind() const override { return "svr"; }

  Vector value(const Vector& x) const override;
  EvalTriple eval(const Vector& x) const override;

  const Matrix& support_vectors() const { return support_vectors_; }
  const Vector& dual_coeffs() const { return dual_coeffs_; }
  double bias() const { return bias_; }
  const Kernel& kernel() const { return kernel_; }

 private:
  Matrix support_vectors_;
  Vector dual_coeffs_;
  double bias_;
  Kernel kernel_;
};

}  // namespace surropt
