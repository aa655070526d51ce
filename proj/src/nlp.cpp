#include "surropt/nlp.hpp"

#include <cmath>
#include <utility>

#include "surropt/errors.hpp"

namespace surropt {

double composite_value(const ScalarTerm& term, const Vector& x, const Vector& y) {
  return term.value(x, y);
}

Vector composite_gradient(const ScalarTerm& term, const Vector& x,
                          const EvalTriple& triple) {
  const Vector& y = triple.value;
  Vector grad = term.grad_x(x, y);
  grad.noalias() += triple.jacobian.transpose() * term.grad_y(x, y);
  return grad;
}

Matrix composite_hessian(const ScalarTerm& term, const Vector& x,
                         const EvalTriple& triple) {
  if (!term.hess_xx || !term.hess_xy || !term.hess_yy) {
    throw ConfigError(
        "composite_hessian: problem term is missing second-partial callbacks");
  }
  const Vector& y = triple.value;
  const Matrix& J = triple.jacobian;

  const Matrix cross = term.hess_xy(x, y) * J;  // n x n
  Matrix H = term.hess_xx(x, y);
  H += cross + cross.transpose();
  H.noalias() += J.transpose() * term.hess_yy(x, y) * J;

  const Vector gy = term.grad_y(x, y);
  for (Eigen::Index j = 0; j < gy.size(); ++j) {
    if (gy[j] != 0.0) H.noalias() += gy[j] * triple.hessians[j];
  }
  return H;
}

Vector eval_equalities(const NlpProblem& problem, const Vector& x,
                       const Vector& y) {
  Vector h(problem.num_eq());
  for (int e = 0; e < problem.num_eq(); ++e) {
    h[e] = problem.equalities[e].value(x, y);
  }
  return h;
}

Vector eval_inequalities(const NlpProblem& problem, const Vector& x,
                         const Vector& y) {
  Vector g(problem.num_in());
  for (int i = 0; i < problem.num_in(); ++i) {
    g[i] = problem.inequalities[i].value(x, y);
  }
  return g;
}

double constraint_violation_l1(const NlpProblem& problem, const Vector& x,
                               const Vector& y) {
  double v = 0.0;
  for (const auto& eq : problem.equalities) v += std::abs(eq.value(x, y));
  for (const auto& in : problem.inequalities) v += std::max(0.0, in.value(x, y));
  return v;
}

ScalarTerm linear_term(Vector c_x, Vector c_y, double constant) {
  const auto n = c_x.size();
  const auto m = c_y.size();
  ScalarTerm term;
  term.value = [c_x, c_y, constant](const Vector& x, const Vector& y) {
    return c_x.dot(x) + c_y.dot(y) + constant;
  };
  term.grad_x = [c_x](const Vector&, const Vector&) { return c_x; };
  term.grad_y = [c_y](const Vector&, const Vector&) { return c_y; };
  term.hess_xx = [n](const Vector&, const Vector&) { return Matrix::Zero(n, n); };
  term.hess_xy = [n, m](const Vector&, const Vector&) { return Matrix::Zero(n, m); };
  term.hess_yy = [m](const Vector&, const Vector&) { return Matrix::Zero(m, m); };
  return term;
}

namespace {

double mixed_rel_error(double a, double b) {
  return std::abs(a - b) / (1.0 + std::abs(b));
}

void validate_term(const ScalarTerm& term, const Vector& x, const Vector& y,
                   double rel_tol, const std::string& label) {
  const auto n = x.size();
  const auto m = y.size();
  const auto fd_step = [](double v) { return 1e-6 * (1.0 + std::abs(v)); };

  const Vector gx = term.grad_x(x, y);
  const Vector gy = term.grad_y(x, y);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector xp = x, xm = x;
    const double h = fd_step(x[i]);
    xp[i] += h;
    xm[i] -= h;
    const double fd = (term.value(xp, y) - term.value(xm, y)) / (2.0 * h);
    if (mixed_rel_error(gx[i], fd) > rel_tol) {
      throw NumericError(label + ": grad_x[" + std::to_string(i) +
                         "] disagrees with finite differences");
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    Vector yp = y, ym = y;
    const double h = fd_step(y[j]);
    yp[j] += h;
    ym[j] -= h;
    const double fd = (term.value(x, yp) - term.value(x, ym)) / (2.0 * h);
    if (mixed_rel_error(gy[j], fd) > rel_tol) {
      throw NumericError(label + ": grad_y[" + std::to_string(j) +
                         "] disagrees with finite differences");
    }
  }

  if (!term.hess_xx || !term.hess_xy || !term.hess_yy) return;
  const Matrix hxx = term.hess_xx(x, y);
  const Matrix hxy = term.hess_xy(x, y);
  const Matrix hyy = term.hess_yy(x, y);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector xp = x, xm = x;
    const double h = fd_step(x[i]);
    xp[i] += h;
    xm[i] -= h;
    const Vector fd_x = (term.grad_x(xp, y) - term.grad_x(xm, y)) / (2.0 * h);
    const Vector fd_y = (term.grad_y(xp, y) - term.grad_y(xm, y)) / (2.0 * h);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (mixed_rel_error(hxx(k, i), fd_x[k]) > rel_tol) {
        throw NumericError(label + ": hess_xx disagrees with finite differences");
      }
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      if (mixed_rel_error(hxy(i, j), fd_y[j]) > rel_tol) {
        throw NumericError(label + ": hess_xy disagrees with finite differences");
      }
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    Vector yp = y, ym = y;
    const double h = fd_step(y[j]);
    yp[j] += h;
    ym[j] -= h;
    const Vector fd = (term.grad_y(x, yp) - term.grad_y(x, ym)) / (2.0 * h);
    for (Eigen::Index k = 0; k < m; ++k) {
      if (mixed_rel_error(hyy(k, j), fd[k]) > rel_tol) {
        throw NumericError(label + ": hess_yy disagrees with finite differences");
      }
    }
  }
}

}  // namespace

void validate_problem_derivatives(const NlpProblem& problem, const Vector& x,
                                  const Vector& y, double rel_tol) {
  validate_term(problem.objective, x, y, rel_tol, "objective");
  for (int e = 0; e < problem.num_eq(); ++e) {
    validate_term(problem.equalities[e], x, y, rel_tol,
                  "equality[" + std::to_string(e) + "]");
  }
  for (int i = 0; i < problem.num_in(); ++i) {
    validate_term(problem.inequalities[i], x, y, rel_tol,
                  "inequality[" + std::to_string(i) + "]");
  }
}

}  // namespace surropt
