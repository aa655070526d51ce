#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "surropt/nlp.hpp"
#include "surropt/qp.hpp"
#include "surropt/surrogate.hpp"

namespace surropt {

struct SolverOptions {
  double eta = 0.1;              // Armijo sufficient-decrease parameter, (0, 0.5)
  double tol = 1e-6;             // convergence tolerance
  double delta = 1e-6;           // eigenvalue floor of the modified Hessian
  int max_outer_iter = 200;
  double backtrack_ratio = 0.618;
  int max_backtracks = 10;

  /// Throws ConfigError when outside the documented ranges.
  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  double f = 0.0;          // objective at the accepted point
  double merit = 0.0;      // merit at the accepted point, current penalties
  double step_norm = 0.0;  // |d|_2
  double alpha = 0.0;
  double violation = 0.0;  // |h|_1 + |max(0, g)|_1 at the accepted point
  double elapsed_ms = 0.0;
};

enum class SolveStatus {
  ConvergedFeasibleObjective,  // feasibility + objective-change criteria
  ConvergedFeasibleStep,       // feasibility + step-size criteria
  MaxIter,
  QpFailure,
};

std::string to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIter;
  Vector x_final;
  Vector y_final;
  double f_final = 0.0;
  std::vector<IterationRecord> records;
  /// Largest merit directional derivative seen across iterations; must stay
  /// <= 0 up to round-off for a correct QP/penalty pairing.
  double max_directional_derivative = 0.0;
  std::string message;

  bool converged() const {
    return status == SolveStatus::ConvergedFeasibleObjective ||
           status == SolveStatus::ConvergedFeasibleStep;
  }
};

/// Hessian of f + lambda'h + mu'g composed through y = s(x) by the full
/// chain rule (surrogate curvature enters via the per-output Hessians).
Matrix lagrangian_hessian(const NlpProblem& problem, const EvalTriple& triple,
                          const Vector& x, const Vector& lambda,
                          const Vector& mu);

/// Spectral clipping: eigenvalues below delta are raised to delta.
/// Returns (B, E) with B = H + E; E = 0 whenever H >= delta I already.
std::pair<Matrix, Matrix> modify_hessian(const Matrix& H, double delta);

/// Linearizes the problem at x: gradient of f plus rows grad h_e d = -h_e
/// and grad g_i d <= -g_i. Box bounds are appended separately by solve().
QpProblem assemble_qp(const NlpProblem& problem, const EvalTriple& triple,
                      const Vector& x, const Matrix& B);

/// l1 merit: f + rho'|h| + nu'max(0, g).
double merit(const NlpProblem& problem, const Vector& x, const Vector& y,
             const Vector& rho, const Vector& nu);

/// One-sided derivative of the merit along d: grad f'd - rho'|h| - nu'max(0, g).
double merit_directional_derivative(const NlpProblem& problem,
                                    const EvalTriple& triple, const Vector& x,
                                    const Vector& d, const Vector& rho,
                                    const Vector& nu);

/// rho = max(|lambda|, (rho_prev + |lambda|)/2), elementwise; same for nu.
std::pair<Vector, Vector> update_penalties(const Vector& rho_prev,
                                           const Vector& nu_prev,
                                           const Vector& lambda_qp,
                                           const Vector& mu_qp);

struct LineSearchResult {
  double alpha = 1.0;
  bool accepted = false;
};

/// Backtracking Armijo search over alpha = ratio^j, j = 0..max_backtracks.
/// When no trial satisfies the condition the last alpha is returned with
/// accepted = false and the caller still takes the step.
LineSearchResult line_search(const NlpProblem& problem,
                             const SurrogateModel& surrogate, const Vector& x,
                             const Vector& d, const Vector& rho,
                             const Vector& nu, double dir_derivative,
                             const SolverOptions& options);

enum class ConvergenceStatus { Continue, FeasibleObjective, FeasibleStep };

/// Feasibility gate first; then objective change, then step size.
ConvergenceStatus check_convergence(const NlpProblem& problem,
                                    const Vector& x_new, const Vector& y_new,
                                    double f_old, const Vector& d, double tol);

/// Feasible-path SQP: evaluate the surrogate at x^k, assemble and clip the
/// Lagrangian Hessian, solve the convex QP for the step and multipliers,
/// update penalties, Armijo-search the l1 merit, and test convergence.
SolveReport solve(const NlpProblem& problem, const SurrogateModel& surrogate,
                  const Vector& x0, const SolverOptions& options = {});

/// Convergence-log CSV: header iter,f,merit,step_norm,alpha,violation,elapsed_ms.
void write_convergence_csv(const std::vector<IterationRecord>& records,
                           std::ostream& out);
std::vector<IterationRecord> read_convergence_csv(std::istream& in);

}  // namespace surropt
