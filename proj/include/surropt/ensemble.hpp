#pragma once

#include <vector>

#include "surropt/surrogate.hpp"

namespace surropt {

/// Weighted ensemble: y = sum_i w_i * member_i(x). Derivatives are the same
/// weighted sums of the member derivatives.
class EnsembleModel final : public SurrogateModel {
 public:
  EnsembleModel(std::vector<SurrogatePtr> members, Vector weights);

  int input_dim() const override { return input_dim_; }
  int output_dim() const override { return output_dim_; }
  std::string kind() const override { return "ensemble"; }

  Vector value(const Vector& x) const override;
  EvalTriple eval(const Vector& x) const override;

  const std::vector<SurrogatePtr>& members() const { return members_; }
  const Vector& weights() const { return weights_; }

 private:
  std::vector<SurrogatePtr> members_;
  Vector weights_;
  int input_dim_;
  int output_dim_;
};

}  // namespace surropt
