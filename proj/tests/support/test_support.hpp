#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "surropt/decision_tree.hpp"
#include "surropt/ensemble.hpp"
#include "surropt/mlp.hpp"
#include "surropt/rng.hpp"
#include "surropt/svr.hpp"
#include "surropt/types.hpp"

namespace surropt::testing {

// ---------------------------------------------------------------------------
// Finite-difference oracles. These stay independent of the analytic
// derivative paths they are used to check: they only call value/gradient
// callbacks supplied by the test.
// ---------------------------------------------------------------------------

inline double fd_step(double coord, double scale = 1e-5) {
  return scale * (1.0 + std::abs(coord));
}

/// Central finite-difference Jacobian of a vector-valued function.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& fn,
                          const Vector& x, double scale = 1e-5) {
  const Vector f0 = fn(x);
  Matrix jac(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = fd_step(x[i], scale);
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    jac.col(i) = (fn(xp) - fn(xm)) / (2.0 * h);
  }
  return jac;
}

/// Central finite differences of a gradient field (Hessian oracle).
inline Matrix fd_hessian_of_gradient(
    const std::function<Vector(const Vector&)>& grad, const Vector& x,
    double scale = 1e-5) {
  return fd_jacobian(grad, x, scale);
}

/// max_ij |a - b| / (1 + |b|): relative on large entries, absolute near zero.
inline double max_mixed_rel_error(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      worst = std::max(worst,
                       std::abs(a(r, c) - b(r, c)) / (1.0 + std::abs(b(r, c))));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Random model builders (seeded; every test pins its own seed).
// ---------------------------------------------------------------------------

inline Vector random_vector(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

inline Matrix random_gaussian_matrix(Rng& rng, int rows, int cols,
                                     double stddev) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = stddev * rng.normal();
  }
  return m;
}

inline std::shared_ptr<MlpModel> random_mlp(Rng& rng, int n, int m,
                                            int hidden_layers = 2) {
  std::vector<int> dims{n};
  for (int l = 0; l < hidden_layers; ++l) {
    dims.push_back(2 + static_cast<int>(rng.below(5)));
  }
  dims.push_back(m);
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double stddev = 1.0 / std::sqrt(static_cast<double>(dims[l]));
    weights.push_back(random_gaussian_matrix(rng, dims[l + 1], dims[l], stddev));
    Vector bias(dims[l + 1]);
    for (Eigen::Index i = 0; i < bias.size(); ++i) bias[i] = 0.1 * rng.normal();
    biases.push_back(bias);
  }
  const Activation act =
      rng.below(2) == 0 ? Activation::Swish : Activation::Tanh;
  return std::make_shared<MlpModel>(dims, std::move(weights), std::move(biases),
                                    act);
}

inline std::shared_ptr<SvrModel> random_svr(Rng& rng, int n) {
  const int n_sv = 4 + static_cast<int>(rng.below(12));
  Matrix sv(n_sv, n);
  for (int i = 0; i < n_sv; ++i) sv.row(i) = random_vector(rng, n).transpose();
  Vector coeffs(n_sv);
  for (int i = 0; i < n_sv; ++i) coeffs[i] = rng.normal();
  Kernel kernel;
  switch (rng.below(3)) {
    case 0:
      kernel = Kernel::rbf(rng.uniform(0.3, 1.5));
      break;
    case 1:
      kernel = Kernel::linear();
      break;
    default:
      kernel = Kernel::polynomial(2 + static_cast<int>(rng.below(2)),
                                  rng.uniform(0.5, 1.5));
      break;
  }
  return std::make_shared<SvrModel>(sv, coeffs, rng.normal(), kernel);
}

inline LeafModel random_leaf(Rng& rng, int n) {
  LeafModel leaf;
  leaf.lin = random_vector(rng, n, -1.0, 1.0);
  leaf.constant = rng.uniform(-1.0, 1.0);
  if (rng.below(2) == 0) {
    Matrix q = random_gaussian_matrix(rng, n, n, 0.3);
    leaf.quad = 0.5 * (q + q.transpose());
  }
  return leaf;
}

/// Random binary tree of the given depth over [-2, 2]^n.
inline std::shared_ptr<DecisionTreeModel> random_tree(Rng& rng, int n,
                                                      int depth = 3) {
  std::vector<TreeNode> nodes;
  const std::function<int(int)> build = [&](int level) -> int {
    const int id = static_cast<int>(nodes.size());
    if (level >= depth || rng.below(4) == 0) {
      nodes.emplace_back(random_leaf(rng, n));
      return id;
    }
    BranchNode branch;
    Vector a = random_vector(rng, n, -1.0, 1.0);
    if (a.norm() < 1e-6) a[0] = 1.0;
    branch.a = a / a.norm();
    branch.b = rng.uniform(-1.0, 1.0);
    nodes.emplace_back(branch);
    const int left = build(level + 1);
    const int right = build(level + 1);
    std::get<BranchNode>(nodes[id]).left = left;
    std::get<BranchNode>(nodes[id]).right = right;
    return id;
  };
  build(0);
  return std::make_shared<DecisionTreeModel>(std::move(nodes), 0);
}

inline std::shared_ptr<EnsembleModel> random_ensemble(Rng& rng, int n) {
  const int count = 2 + static_cast<int>(rng.below(2));
  std::vector<SurrogatePtr> members;
  Vector weights(count);
  for (int i = 0; i < count; ++i) {
    if (rng.below(2) == 0) {
      members.push_back(random_mlp(rng, n, 1));
    } else {
      members.push_back(random_svr(rng, n));
    }
    weights[i] = rng.uniform(0.2, 1.0);
  }
  weights /= weights.sum();
  return std::make_shared<EnsembleModel>(std::move(members), weights);
}

}  // namespace surropt::testing
