#include "surropt/mlp.hpp"

#include <utility>

#include "surropt/errors.hpp"

namespace surropt {

MlpModel::MlpModel(std::vector<int> layer_dims, std::vector<Matrix> weights,
                   std::vector<Vector> biases,
                   std::vector<Activation> hidden_activations)
    : layer_dims_(std::move(layer_dims)),
      weights_(std::move(weights)),
      biases_(std::move(biases)),
      hidden_activations_(std::move(hidden_activations)) {
  if (layer_dims_.size() < 2) {
    throw ShapeError("MlpModel needs at least input and output dims");
  }
  const auto n_layers = layer_dims_.size() - 1;
  if (weights_.size() != n_layers || biases_.size() != n_layers) {
    throw ShapeError("MlpModel: expected one weight matrix and bias per layer");
  }
  if (hidden_activations_.size() != n_layers - 1) {
    throw ShapeError("MlpModel: expected one activation per hidden layer");
  }
  for (std::size_t l = 0; l < n_layers; ++l) {
    if (layer_dims_[l] <= 0) throw ShapeError("MlpModel: non-positive layer dim");
    if (weights_[l].rows() != layer_dims_[l + 1] ||
        weights_[l].cols() != layer_dims_[l]) {
      throw ShapeError("MlpModel: weight shape mismatch at layer " +
                       std::to_string(l));
    }
    if (biases_[l].size() != layer_dims_[l + 1]) {
      throw ShapeError("MlpModel: bias length mismatch at layer " +
                       std::to_string(l));
    }
    if (!weights_[l].allFinite() || !biases_[l].allFinite()) {
      throw NumericError("MlpModel: non-finite parameter at layer " +
                         std::to_string(l));
    }
  }
  if (layer_dims_.back() <= 0) throw ShapeError("MlpModel: non-positive output dim");
}

MlpModel::MlpModel(std::vector<int> layer_dims, std::vector<Matrix> weights,
                   std::vector<Vector> biases, Activation activation)
    : MlpModel(layer_dims, std::move(weights), std::move(biases),
               std::vector<Activation>(
                   layer_dims.size() >= 2 ? layer_dims.size() - 2 : 0,
                   activation)) {}

Vector MlpModel::value(const Vector& x) const {
  check_input(x);
  Vector a = x;
  const int L = hidden_layers();
  for (int l = 0; l < L; ++l) {
    Vector z = weights_[l] * a + biases_[l];
    for (Eigen::Index q = 0; q < z.size(); ++q) {
      z[q] = activation_eval(hidden_activations_[l], z[q]).value;
    }
    a = std::move(z);
  }
  return weights_[L] * a + biases_[L];
}

EvalTriple MlpModel::eval(const Vector& x) const {
  check_input(x);
  const int n = input_dim();
  const int m = output_dim();
  const int L = hidden_layers();

  Vector a = x;
  Matrix P = Matrix::Identity(n, n);  // d a / d x for the current layer
  std::vector<Matrix> T;              // d^2 a_q / d x dx' per unit q

  for (int l = 0; l < L; ++l) {
    const Vector z = weights_[l] * a + biases_[l];
    const Matrix G = weights_[l] * P;  // d z / d x
    const int width = layer_dims_[l + 1];

    std::vector<Matrix> T_next(width);
    Vector phi(width), d1(width);
    for (int q = 0; q < width; ++q) {
      const ActivationDerivs ad = activation_eval(hidden_activations_[l], z[q]);
      phi[q] = ad.value;
      d1[q] = ad.d1;
      // d^2 z_q / dx dx' = sum_p W_qp * T_p (zero before the first hidden layer)
      Matrix Zq = Matrix::Zero(n, n);
      if (!T.empty()) {
        for (int p = 0; p < static_cast<int>(T.size()); ++p) {
          const double w = weights_[l](q, p);
          if (w != 0.0) Zq.noalias() += w * T[p];
        }
      }
      T_next[q] = ad.d2 * (G.row(q).transpose() * G.row(q)) + ad.d1 * Zq;
    }

    a = phi;
    P = d1.asDiagonal() * G;
    T = std::move(T_next);
  }

  EvalTriple out;
  out.value = weights_[L] * a + biases_[L];
  out.jacobian = weights_[L] * P;
  out.hessians.assign(m, Matrix::Zero(n, n));
  if (!T.empty()) {
    for (int j = 0; j < m; ++j) {
      Matrix& H = out.hessians[j];
      for (int q = 0; q < static_cast<int>(T.size()); ++q) {
        const double w = weights_[L](j, q);
        if (w != 0.0) H.noalias() += w * T[q];
      }
      H = 0.5 * (H + H.transpose()).eval();
    }
  }
  return out;
}

}  // namespace surropt
