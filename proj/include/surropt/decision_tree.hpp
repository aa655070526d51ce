#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "surropt/surrogate.hpp"

namespace surropt {

/// Leaf prediction p(x) = x'Qx + c'x + c0 (Q absent for affine leaves).
/// Both forms are C^2, which keeps the boundary subgradient data exact.
struct LeafModel {
  std::optional<Matrix> quad;
  Vector lin;
  double constant = 0.0;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;
};

/// Split a'x <= b goes left (equality included on the left).
struct BranchNode {
  Vector a;
  double b = 0.0;
  int left = -1;
  int right = -1;
};

using TreeNode = std::variant<BranchNode, LeafModel>;

/// Piecewise-polynomial regression tree over linear-hyperplane splits.
/// Interior points take the owning leaf's derivatives; points on one or more
/// split hyperplanes get the minimum-norm subgradient over the convex hull of
/// the gradients of every leaf reachable by flipping the active splits, and a
/// Hessian estimated by symmetric finite differences of that subgradient
/// field.
class DecisionTreeModel final : public SurrogateModel {
 public:
  /// Relative tolerance deciding that a split hyperplane is active at x.
  static constexpr double kBoundaryTol = 1e-9;
  /// Per-coordinate step for the boundary-Hessian finite difference.
  static constexpr double kHessianFdStep = 1e-6;

  DecisionTreeModel(std::vector<TreeNode> nodes, int root);

  int input_dim() const override { return input_dim_; }
  int output_dim() const override { return 1; }
  std::string kind() const override { return "decision_tree"; }

  Vector value(const Vector& x) const override;
  EvalTriple eval(const Vector& x) const override;

  struct Located {
    int leaf;                        // node index of the owning leaf
    std::vector<int> active_splits;  // branch node indices with a'x ~= b on the path
  };

  /// Root-to-leaf descent (left on ties), recording path splits that x lies
  /// on to within kBoundaryTol * (1 + |b|).
  Located locate_leaf(const Vector& x) const;

  /// Leaves of every descent that flips any subset of active splits
  /// (deduplicated, owning leaf first).
  std::vector<int> boundary_leaves(const Vector& x) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int root() const { return root_; }

 private:
  Vector subgradient(const Vector& x) const;

  std::vector<TreeNode> nodes_;
  int root_;
  int input_dim_;
};

/// Minimum-norm point of the convex hull of the given vectors (the Eq-7-style
/// weights live on the simplex). Exact: enumerates candidate support sets.
Vector min_norm_convex_combination(const std::vector<Vector>& gradients);

}  // namespace surropt
