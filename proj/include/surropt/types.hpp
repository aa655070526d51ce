#pragma once

#include <Eigen/Dense>
#include <vector>

namespace surropt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One surrogate evaluation: value y = s(x), Jacobian ds/dx (m x n) and one
/// n x n Hessian per output component.
struct EvalTriple {
  Vector value;
  Matrix jacobian;
  std::vector<Matrix> hessians;

  int output_dim() const { return static_cast<int>(value.size()); }
  int input_dim() const { return static_cast<int>(jacobian.cols()); }
};

/// Per-coordinate box; lo and hi have equal length, entries may be +-inf.
struct Box {
  Vector lo;
  Vector hi;
};

}  // namespace surropt
