#pragma once

#include "surropt/types.hpp"

namespace surropt {

/// Strictly convex QP
///   min 1/2 d'Bd + g'd   s.t.  A_eq d = b_eq,  A_in d <= b_in
/// with B symmetric positive definite (callers clip eigenvalues upstream).
struct QpProblem {
  Matrix B;
  Vector g;
  Matrix A_eq;  // p_E x n (0 x n when absent)
  Vector b_eq;
  Matrix A_in;  // p_I x n
  Vector b_in;

  int dim() const { return static_cast<int>(g.size()); }
  int num_eq() const { return static_cast<int>(b_eq.size()); }
  int num_in() const { return static_cast<int>(b_in.size()); }
};

enum class QpStatus { Optimal, Infeasible, MaxIter };

/// Multipliers satisfy  B d + g + A_eq' lambda + A_in' mu = 0  with mu >= 0
/// and complementary slackness on the inequalities.
struct QpSolution {
  Vector d;
  Vector lambda;  // p_E
  Vector mu;      // p_I, zero on inactive rows
  double kkt_residual = 0.0;
  QpStatus status = QpStatus::Optimal;
  int iterations = 0;
};

struct QpOptions {
  double tol = 1e-9;
  int max_iter = 0;  // 0 -> 50 * (n + p_E + p_I)
};

/// Primal active-set method with a phase-1 feasibility start. Deterministic:
/// smallest-index tie-breaking when adding/dropping constraints.
QpSolution solve_qp(const QpProblem& qp, const QpOptions& options = {});

/// Max over stationarity, primal and dual feasibility and complementarity
/// residuals (infinity norms).
double kkt_residual(const QpProblem& qp, const QpSolution& sol);

}  // namespace surropt
