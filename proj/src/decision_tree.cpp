#include "surropt/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "surropt/errors.hpp"

namespace surropt {

double LeafModel::value(const Vector& x) const {
  double v = lin.dot(x) + constant;
  if (quad) v += x.dot(*quad * x);
  return v;
}

Vector LeafModel::gradient(const Vector& x) const {
  Vector g = lin;
  if (quad) g += (*quad + quad->transpose()) * x;
  return g;
}

Matrix LeafModel::hessian(const Vector& x) const {
  const auto n = x.size();
  if (quad) return *quad + quad->transpose();
  return Matrix::Zero(n, n);
}

namespace {

bool split_is_active(const BranchNode& node, const Vector& x) {
  return std::abs(node.a.dot(x) - node.b) <=
         DecisionTreeModel::kBoundaryTol * (1.0 + std::abs(node.b));
}

}  // namespace

DecisionTreeModel::DecisionTreeModel(std::vector<TreeNode> nodes, int root)
    : nodes_(std::move(nodes)), root_(root), input_dim_(0) {
  if (nodes_.empty()) throw StructureError("decision tree has no nodes");
  if (root_ < 0 || root_ >= static_cast<int>(nodes_.size())) {
    throw StructureError("decision tree root index out of range");
  }

  // Validate topology: every referenced child exists, nothing is reached
  // twice (which would make the node graph a DAG or a cycle, not a tree),
  // and every path ends at a leaf.
  std::vector<char> seen(nodes_.size(), 0);
  std::deque<int> queue{root_};
  int leaves = 0;
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    if (id < 0 || id >= static_cast<int>(nodes_.size())) {
      throw StructureError("decision tree child index out of range");
    }
    if (seen[id]) throw StructureError("decision tree node reached twice");
    seen[id] = 1;
    if (const auto* branch = std::get_if<BranchNode>(&nodes_[id])) {
      if (branch->a.size() == 0) {
        throw StructureError("decision tree split has empty hyperplane");
      }
      if (input_dim_ == 0) input_dim_ = static_cast<int>(branch->a.size());
      if (branch->a.size() != input_dim_) {
        throw ShapeError("decision tree splits disagree on input dimension");
      }
      queue.push_back(branch->left);
      queue.push_back(branch->right);
    } else {
      ++leaves;
    }
  }
  if (leaves == 0) throw StructureError("decision tree has no reachable leaf");

  // A single-leaf tree carries no hyperplane; take the dimension from the
  // leaf coefficients.
  for (const auto& node : nodes_) {
    if (const auto* leaf = std::get_if<LeafModel>(&node)) {
      const int leaf_dim = static_cast<int>(leaf->lin.size());
      if (input_dim_ == 0) input_dim_ = leaf_dim;
      if (leaf_dim != input_dim_) {
        throw ShapeError("decision tree leaf coefficients disagree on dimension");
      }
      if (leaf->quad && (leaf->quad->rows() != input_dim_ ||
                         leaf->quad->cols() != input_dim_)) {
        throw ShapeError("decision tree leaf quadratic term has wrong shape");
      }
    }
  }
  if (input_dim_ <= 0) throw StructureError("decision tree input dimension unknown");
}

DecisionTreeModel::Located DecisionTreeModel::locate_leaf(const Vector& x) const {
  check_input(x);
  Located out;
  out.leaf = root_;
  int guard = 0;
  const int limit = static_cast<int>(nodes_.size()) + 1;
  while (const auto* branch = std::get_if<BranchNode>(&nodes_[out.leaf])) {
    if (++guard > limit) throw StructureError("decision tree descent did not terminate");
    if (split_is_active(*branch, x)) out.active_splits.push_back(out.leaf);
    out.leaf = branch->a.dot(x) <= branch->b ? branch->left : branch->right;
  }
  return out;
}

std::vector<int> DecisionTreeModel::boundary_leaves(const Vector& x) const {
  // Descend from the root, branching both ways wherever the split is active.
  // This reaches exactly the leaves obtainable by re-descending the sibling
  // subtree of each active split, to any nesting depth.
  std::vector<int> leaves;
  std::deque<int> queue{root_};
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    if (const auto* branch = std::get_if<BranchNode>(&nodes_[id])) {
      if (split_is_active(*branch, x)) {
        queue.push_back(branch->left);
        queue.push_back(branch->right);
      } else {
        queue.push_back(branch->a.dot(x) <= branch->b ? branch->left
                                                      : branch->right);
      }
    } else {
      if (std::find(leaves.begin(), leaves.end(), id) == leaves.end()) {
        leaves.push_back(id);
      }
    }
  }
  return leaves;
}

Vector min_norm_convex_combination(const std::vector<Vector>& gradients) {
  if (gradients.empty()) {
    throw ConfigError("min_norm_convex_combination: no gradients given");
  }
  const int k = static_cast<int>(gradients.size());
  if (k == 1) return gradients[0];
  if (k > 14) {
    throw NumericError(
        "min_norm_convex_combination: too many candidate gradients (" +
        std::to_string(k) + ")");
  }
  const auto n = gradients[0].size();
  Matrix gram(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = gradients[i].dot(gradients[j]);
    }
  }

  // The optimum's support set solves the equality-constrained subproblem
  //   min |sum_i w_i g_i|^2  s.t.  sum_i w_i = 1
  // restricted to that set, with nonnegative weights. Enumerate support
  // sets, keep the feasible candidate of smallest norm.
  double best_sq = std::numeric_limits<double>::infinity();
  Vector best = gradients[0];
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    const int s = static_cast<int>(idx.size());
    Matrix kkt = Matrix::Zero(s + 1, s + 1);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) kkt(i, j) = 2.0 * gram(idx[i], idx[j]);
      kkt(i, s) = kkt(s, i) = 1.0;
    }
    Vector rhs = Vector::Zero(s + 1);
    rhs[s] = 1.0;
    Eigen::FullPivLU<Matrix> lu(kkt);
    Vector sol;
    if (lu.isInvertible()) {
      sol = lu.solve(rhs);
    } else {
      sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    }
    bool feasible = true;
    for (int i = 0; i < s; ++i) {
      if (sol[i] < -1e-12) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    Vector v = Vector::Zero(n);
    for (int i = 0; i < s; ++i) v.noalias() += sol[i] * gradients[idx[i]];
    const double sq = v.squaredNorm();
    if (sq < best_sq - 1e-15 * (1.0 + best_sq)) {
      best_sq = sq;
      best = v;
    }
  }
  return best;
}

Vector DecisionTreeModel::subgradient(const Vector& x) const {
  const Located loc = locate_leaf(x);
  if (loc.active_splits.empty()) {
    return std::get<LeafModel>(nodes_[loc.leaf]).gradient(x);
  }
  std::vector<Vector> grads;
  for (int leaf : boundary_leaves(x)) {
    grads.push_back(std::get<LeafModel>(nodes_[leaf]).gradient(x));
  }
  return min_norm_convex_combination(grads);
}

Vector DecisionTreeModel::value(const Vector& x) const {
  const Located loc = locate_leaf(x);
  return Vector::Constant(1, std::get<LeafModel>(nodes_[loc.leaf]).value(x));
}

EvalTriple DecisionTreeModel::eval(const Vector& x) const {
  const Located loc = locate_leaf(x);
  const auto& leaf = std::get<LeafModel>(nodes_[loc.leaf]);

  EvalTriple out;
  out.value = Vector::Constant(1, leaf.value(x));
  if (loc.active_splits.empty()) {
    out.jacobian = leaf.gradient(x).transpose();
    out.hessians = {leaf.hessian(x)};
    return out;
  }

  out.jacobian = subgradient(x).transpose();

  // Approximate Hessian: symmetric differences of the subgradient field.
  const auto n = x.size();
  Matrix hess(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = kHessianFdStep * (1.0 + std::abs(x[i]));
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    hess.col(i) = (subgradient(xp) - subgradient(xm)) / (2.0 * h);
  }
  out.hessians = {0.5 * (hess + hess.transpose())};
  return out;
}

}  // namespace surropt
