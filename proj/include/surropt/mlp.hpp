#pragma once

#include <vector>

#include "surropt/activation.hpp"
#include "surropt/surrogate.hpp"

namespace surropt {

/// Fully-connected feed-forward network with affine output layer. Hidden
/// activations must be twice differentiable; the Jacobian comes from the
/// layer product of diag(phi') terms and the per-output Hessian from the
/// layer recursion that adds one rank-structured phi'' outer-product term
/// per hidden unit.
class MlpModel final : public SurrogateModel {
 public:
  /// layer_dims = {n, h_1, ..., h_L, m}; weights[l] is layer_dims[l+1] x
  /// layer_dims[l]; hidden_activations has one entry per hidden layer (L).
  MlpModel(std::vector<int> layer_dims, std::vector<Matrix> weights,
           std::vector<Vector> biases, std::vector<Activation> hidden_activations);

  /// Same activation for every hidden layer.
  MlpModel(std::vector<int> layer_dims, std::vector<Matrix> weights,
           std::vector<Vector> biases, Activation activation);

  int input_dim() const override { return layer_dims_.front(); }
  int output_dim() const override { return layer_dims_.back(); }
  std::string kind() const override { return "mlp"; }

  Vector value(const Vector& x) const override;
  EvalTriple eval(const Vector& x) const override;

  const std::vector<int>& layer_dims() const { return layer_dims_; }
  const std::vector<Matrix>& weights() const { return weights_; }
  const std::vector<Vector>& biases() const { return biases_; }
  const std::vector<Activation>& hidden_activations() const {
    return hidden_activations_;
  }
  int hidden_layers() const { return static_cast<int>(layer_dims_.size()) - 2; }

 private:
  std::vector<int> layer_dims_;
  std::vector<Matrix> weights_;
  std::vector<Vector> biases_;
  std::vector<Activation> hidden_activations_;
};

}  // namespace surropt
