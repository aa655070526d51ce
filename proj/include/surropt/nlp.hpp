#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "surropt/types.hpp"

namespace surropt {

/// One scalar function F(x, y) with first and second partials. The second
/// partial callbacks may be left empty when only first-order use is intended;
/// Hessian assembly then raises ConfigError.
struct ScalarTerm {
  std::function<double(const Vector&, const Vector&)> value;
  std::function<Vector(const Vector&, const Vector&)> grad_x;  // n
  std::function<Vector(const Vector&, const Vector&)> grad_y;  // m
  std::function<Matrix(const Vector&, const Vector&)> hess_xx; // n x n
  std::function<Matrix(const Vector&, const Vector&)> hess_xy; // n x m
  std::function<Matrix(const Vector&, const Vector&)> hess_yy; // m x m
};

/// NLP over (x, y) with y tied to a surrogate y = s(x):
///   min f(x, y)  s.t.  h(x, y) = 0,  g(x, y) <= 0,  x in x_bounds.
struct NlpProblem {
  int n = 0;
  int m = 0;
  ScalarTerm objective;
  std::vector<ScalarTerm> equalities;    // h, p_E entries
  std::vector<ScalarTerm> inequalities;  // g, p_I entries
  std::optional<Box> x_bounds;

  int num_eq() const { return static_cast<int>(equalities.size()); }
  int num_in() const { return static_cast<int>(inequalities.size()); }
};

/// F(x, y) + (d/dx) F(x, s(x)) + (d^2/dx^2) F(x, s(x)) through the chain
/// rule, using the surrogate triple at x.
double composite_value(const ScalarTerm& term, const Vector& x, const Vector& y);
Vector composite_gradient(const ScalarTerm& term, const Vector& x,
                          const EvalTriple& triple);
Matrix composite_hessian(const ScalarTerm& term, const Vector& x,
                         const EvalTriple& triple);

Vector eval_equalities(const NlpProblem& problem, const Vector& x, const Vector& y);
Vector eval_inequalities(const NlpProblem& problem, const Vector& x, const Vector& y);

/// Sum of |h| plus positive parts of g (the Eq-33-style infeasibility measure).
double constraint_violation_l1(const NlpProblem& problem, const Vector& x,
                               const Vector& y);

/// Term c_y'y + c_x'x + constant with exact zero second partials.
ScalarTerm linear_term(Vector c_x, Vector c_y, double constant = 0.0);

/// Compares every callback's analytic partials against central finite
/// differences at (x, y); throws NumericError when any mixed relative error
/// exceeds rel_tol. Used by strict-mode construction and tests.
void validate_problem_derivatives(const NlpProblem& problem, const Vector& x,
                                  const Vector& y, double rel_tol = 1e-5);

}  // namespace surropt
