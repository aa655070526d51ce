#include "surropt/sqp.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "surropt/errors.hpp"

namespace surropt {

void SolverOptions::validate() const {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw ConfigError("SolverOptions: eta must lie in (0, 0.5)");
  }
  if (!(tol > 0.0)) throw ConfigError("SolverOptions: tol must be positive");
  if (!(delta > 0.0)) throw ConfigError("SolverOptions: delta must be positive");
  if (!(backtrack_ratio > 0.0 && backtrack_ratio < 1.0)) {
    throw ConfigError("SolverOptions: backtrack_ratio must lie in (0, 1)");
  }
  if (max_outer_iter < 1) {
    throw ConfigError("SolverOptions: max_outer_iter must be >= 1");
  }
  if (max_backtracks < 0) {
    throw ConfigError("SolverOptions: max_backtracks must be >= 0");
  }
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ConvergedFeasibleObjective:
      return "converged_feasible_objective";
    case SolveStatus::ConvergedFeasibleStep:
      return "converged_feasible_step";
    case SolveStatus::MaxIter:
      return "max_iter";
    case SolveStatus::QpFailure:
      return "qp_failure";
  }
  return "?";
}

Matrix lagrangian_hessian(const NlpProblem& problem, const EvalTriple& triple,
                          const Vector& x, const Vector& lambda,
                          const Vector& mu) {
  if (lambda.size() != problem.num_eq() || mu.size() != problem.num_in()) {
    throw ShapeError("lagrangian_hessian: multiplier lengths mismatch");
  }
  Matrix H = composite_hessian(problem.objective, x, triple);
  for (int e = 0; e < problem.num_eq(); ++e) {
    if (lambda[e] != 0.0) {
      H.noalias() += lambda[e] * composite_hessian(problem.equalities[e], x, triple);
    }
  }
  for (int i = 0; i < problem.num_in(); ++i) {
    if (mu[i] != 0.0) {
      H.noalias() += mu[i] * composite_hessian(problem.inequalities[i], x, triple);
    }
  }
  return H;
}

std::pair<Matrix, Matrix> modify_hessian(const Matrix& H, double delta) {
  if (H.rows() != H.cols()) throw ShapeError("modify_hessian: H must be square");
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ShapeError("modify_hessian: H must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
  if (eig.info() != Eigen::Success) {
    throw NumericError("modify_hessian: eigendecomposition failed");
  }
  const Vector& sigma = eig.eigenvalues();
  if (sigma.minCoeff() >= delta) {
    return {H, Matrix::Zero(H.rows(), H.cols())};
  }
  const Vector tau = (delta - sigma.array()).max(0.0).matrix();
  const Matrix& Q = eig.eigenvectors();
  Matrix B = Q * sigma.cwiseMax(delta).asDiagonal() * Q.transpose();
  Matrix E = Q * tau.asDiagonal() * Q.transpose();
  B = 0.5 * (B + B.transpose()).eval();
  E = 0.5 * (E + E.transpose()).eval();
  return {B, E};
}

QpProblem assemble_qp(const NlpProblem& problem, const EvalTriple& triple,
                      const Vector& x, const Matrix& B) {
  const int n = problem.n;
  if (B.rows() != n || B.cols() != n) {
    throw ShapeError("assemble_qp: B must be n x n");
  }
  if (triple.input_dim() != n || triple.output_dim() != problem.m) {
    throw ShapeError("assemble_qp: surrogate triple shape mismatch");
  }
  const Vector& y = triple.value;

  QpProblem qp;
  qp.B = B;
  qp.g = composite_gradient(problem.objective, x, triple);
  qp.A_eq.resize(problem.num_eq(), n);
  qp.b_eq.resize(problem.num_eq());
  for (int e = 0; e < problem.num_eq(); ++e) {
    qp.A_eq.row(e) = composite_gradient(problem.equalities[e], x, triple).transpose();
    qp.b_eq[e] = -problem.equalities[e].value(x, y);
  }
  qp.A_in.resize(problem.num_in(), n);
  qp.b_in.resize(problem.num_in());
  for (int i = 0; i < problem.num_in(); ++i) {
    qp.A_in.row(i) = composite_gradient(problem.inequalities[i], x, triple).transpose();
    qp.b_in[i] = -problem.inequalities[i].value(x, y);
  }
  return qp;
}

double merit(const NlpProblem& problem, const Vector& x, const Vector& y,
             const Vector& rho, const Vector& nu) {
  double phi = problem.objective.value(x, y);
  for (int e = 0; e < problem.num_eq(); ++e) {
    phi += rho[e] * std::abs(problem.equalities[e].value(x, y));
  }
  for (int i = 0; i < problem.num_in(); ++i) {
    phi += nu[i] * std::max(0.0, problem.inequalities[i].value(x, y));
  }
  return phi;
}

double merit_directional_derivative(const NlpProblem& problem,
                                    const EvalTriple& triple, const Vector& x,
                                    const Vector& d, const Vector& rho,
                                    const Vector& nu) {
  const Vector& y = triple.value;
  double D = composite_gradient(problem.objective, x, triple).dot(d);
  for (int e = 0; e < problem.num_eq(); ++e) {
    D -= rho[e] * std::abs(problem.equalities[e].value(x, y));
  }
  for (int i = 0; i < problem.num_in(); ++i) {
    D -= nu[i] * std::max(0.0, problem.inequalities[i].value(x, y));
  }
  return D;
}

std::pair<Vector, Vector> update_penalties(const Vector& rho_prev,
                                           const Vector& nu_prev,
                                           const Vector& lambda_qp,
                                           const Vector& mu_qp) {
  if (rho_prev.size() != lambda_qp.size() || nu_prev.size() != mu_qp.size()) {
    throw ShapeError("update_penalties: length mismatch");
  }
  const Vector abs_lambda = lambda_qp.cwiseAbs();
  const Vector abs_mu = mu_qp.cwiseAbs();
  Vector rho = abs_lambda.cwiseMax(0.5 * (rho_prev + abs_lambda));
  Vector nu = abs_mu.cwiseMax(0.5 * (nu_prev + abs_mu));
  return {std::move(rho), std::move(nu)};
}

LineSearchResult line_search(const NlpProblem& problem,
                             const SurrogateModel& surrogate, const Vector& x,
                             const Vector& d, const Vector& rho,
                             const Vector& nu, double dir_derivative,
                             const SolverOptions& options) {
  if (dir_derivative > 1e-10) {
    throw NumericError(
        "line_search: nonnegative merit directional derivative (" +
        std::to_string(dir_derivative) + "); QP step or penalties are wrong");
  }
  const Vector y0 = surrogate.value(x);
  const double phi0 = merit(problem, x, y0, rho, nu);

  double alpha = 1.0;
  for (int trial = 0; trial <= options.max_backtracks; ++trial) {
    const Vector x_trial = x + alpha * d;
    const Vector y_trial = surrogate.value(x_trial);
    if (!y_trial.allFinite()) {
      throw NumericError("line_search: surrogate returned non-finite values");
    }
    const double phi = merit(problem, x_trial, y_trial, rho, nu);
    if (!std::isfinite(phi)) {
      throw NumericError("line_search: merit is non-finite at a trial point");
    }
    if (phi - phi0 < alpha * options.eta * dir_derivative) {
      return {alpha, true};
    }
    if (trial < options.max_backtracks) alpha *= options.backtrack_ratio;
  }
  return {alpha, false};
}

ConvergenceStatus check_convergence(const NlpProblem& problem,
                                    const Vector& x_new, const Vector& y_new,
                                    double f_old, const Vector& d, double tol) {
  if (constraint_violation_l1(problem, x_new, y_new) >= tol) {
    return ConvergenceStatus::Continue;
  }
  const double f_new = problem.objective.value(x_new, y_new);
  if (std::abs(f_new - f_old) < tol) return ConvergenceStatus::FeasibleObjective;
  if (d.norm() < tol) return ConvergenceStatus::FeasibleStep;
  return ConvergenceStatus::Continue;
}

namespace {

/// Appends the box rows x_lo - x <= d <= x_hi - x to the QP so every iterate
/// stays inside the surrogate's training domain.
void append_box_rows(const NlpProblem& problem, const Vector& x, QpProblem& qp) {
  if (!problem.x_bounds) return;
  const auto& box = *problem.x_bounds;
  const int n = problem.n;
  std::vector<std::pair<int, double>> rows;  // (signed index+1, bound)
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(box.hi[i])) rows.emplace_back(i + 1, box.hi[i] - x[i]);
    if (std::isfinite(box.lo[i])) rows.emplace_back(-(i + 1), x[i] - box.lo[i]);
  }
  if (rows.empty()) return;
  const int base = qp.num_in();
  Matrix A(base + rows.size(), n);
  Vector b(base + rows.size());
  A.topRows(base) = qp.A_in;
  b.head(base) = qp.b_in;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    A.row(base + r).setZero();
    const int i = std::abs(rows[r].first) - 1;
    A(base + r, i) = rows[r].first > 0 ? 1.0 : -1.0;
    b[base + r] = rows[r].second;
  }
  qp.A_in = std::move(A);
  qp.b_in = std::move(b);
}

}  // namespace

SolveReport solve(const NlpProblem& problem, const SurrogateModel& surrogate,
                  const Vector& x0, const SolverOptions& options) {
  options.validate();
  if (surrogate.input_dim() != problem.n || surrogate.output_dim() != problem.m) {
    throw ShapeError("solve: surrogate dims disagree with problem dims");
  }
  if (x0.size() != problem.n) {
    throw ShapeError("solve: x0 has wrong length");
  }
  if (problem.x_bounds) {
    const auto& box = *problem.x_bounds;
    if (box.lo.size() != problem.n || box.hi.size() != problem.n) {
      throw ShapeError("solve: x_bounds length mismatch");
    }
    for (int i = 0; i < problem.n; ++i) {
      if (x0[i] < box.lo[i] || x0[i] > box.hi[i]) {
        throw ConfigError("solve: x0 violates x_bounds at coordinate " +
                          std::to_string(i));
      }
    }
  }

  SolveReport report;
  report.max_directional_derivative = -std::numeric_limits<double>::infinity();

  Vector x = x0;
  Vector lambda = Vector::Zero(problem.num_eq());
  Vector mu = Vector::Zero(problem.num_in());
  Vector rho = Vector::Zero(problem.num_eq());
  Vector nu = Vector::Zero(problem.num_in());

  for (int iter = 0; iter < options.max_outer_iter; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();

    const EvalTriple triple = surrogate.eval(x);
    if (!triple.value.allFinite() || !triple.jacobian.allFinite()) {
      throw NumericError("solve: surrogate evaluation is non-finite at x^" +
                         std::to_string(iter));
    }
    const Vector y = triple.value;
    const double f_old = problem.objective.value(x, y);

    const Matrix H = lagrangian_hessian(problem, triple, x, lambda, mu);
    const Matrix B = modify_hessian(H, options.delta).first;

    QpProblem qp = assemble_qp(problem, triple, x, B);
    append_box_rows(problem, x, qp);
    const QpSolution qp_sol = solve_qp(qp);
    if (qp_sol.status != QpStatus::Optimal) {
      report.status = SolveStatus::QpFailure;
      report.x_final = x;
      report.y_final = y;
      report.f_final = f_old;
      report.message = "QP subproblem " +
                       std::string(qp_sol.status == QpStatus::Infeasible
                                       ? "infeasible"
                                       : "hit its iteration cap") +
                       " at iteration " + std::to_string(iter);
      return report;
    }

    const Vector d = qp_sol.d;
    lambda = qp_sol.lambda;
    mu = qp_sol.mu.head(problem.num_in());  // box-row multipliers stay internal
    std::tie(rho, nu) = update_penalties(rho, nu, lambda, mu);

    const double D =
        merit_directional_derivative(problem, triple, x, d, rho, nu);
    report.max_directional_derivative =
        std::max(report.max_directional_derivative, D);
    if (D > 1e-10) {
      throw NumericError(
          "solve: merit directional derivative " + std::to_string(D) +
          " > 0 at iteration " + std::to_string(iter) +
          "; positive-definite B with updated penalties must give descent");
    }

    const LineSearchResult ls =
        line_search(problem, surrogate, x, d, rho, nu, D, options);

    const Vector x_new = x + ls.alpha * d;
    const Vector y_new = surrogate.value(x_new);
    if (!y_new.allFinite()) {
      throw NumericError("solve: surrogate non-finite at the accepted point");
    }

    const auto t1 = std::chrono::steady_clock::now();
    IterationRecord rec;
    rec.iter = iter;
    rec.f = problem.objective.value(x_new, y_new);
    rec.merit = merit(problem, x_new, y_new, rho, nu);
    rec.step_norm = d.norm();
    rec.alpha = ls.alpha;
    rec.violation = constraint_violation_l1(problem, x_new, y_new);
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.records.push_back(rec);

    const ConvergenceStatus conv =
        check_convergence(problem, x_new, y_new, f_old, d, options.tol);
    x = x_new;
    if (conv != ConvergenceStatus::Continue) {
      report.status = conv == ConvergenceStatus::FeasibleObjective
                          ? SolveStatus::ConvergedFeasibleObjective
                          : SolveStatus::ConvergedFeasibleStep;
      report.x_final = x;
      report.y_final = y_new;
      report.f_final = rec.f;
      return report;
    }
  }

  report.status = SolveStatus::MaxIter;
  report.x_final = x;
  report.y_final = surrogate.value(x);
  report.f_final = problem.objective.value(x, report.y_final);
  report.message = "iteration cap reached";
  return report;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_convergence_csv(const std::vector<IterationRecord>& records,
                           std::ostream& out) {
  out << "iter,f,merit,step_norm,alpha,violation,elapsed_ms\n";
  for (const auto& r : records) {
    out << r.iter << ',' << format_double(r.f) << ',' << format_double(r.merit)
        << ',' << format_double(r.step_norm) << ',' << format_double(r.alpha)
        << ',' << format_double(r.violation) << ','
        << format_double(r.elapsed_ms) << '\n';
  }
}

std::vector<IterationRecord> read_convergence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("convergence CSV: missing header");
  }
  if (line == "iter,f,merit,step_norm,alpha,violation,elapsed_ms\r") {
    line.pop_back();
  }
  if (line != "iter,f,merit,step_norm,alpha,violation,elapsed_ms") {
    throw ParseError("convergence CSV: unexpected header '" + line + "'");
  }
  std::vector<IterationRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ParseError("convergence CSV line " + std::to_string(line_no) +
                         ": bad number '" + cell + "'");
      }
      values.push_back(v);
    }
    if (values.size() != 7) {
      throw ParseError("convergence CSV line " + std::to_string(line_no) +
                       ": expected 7 columns, got " +
                       std::to_string(values.size()));
    }
    IterationRecord r;
    r.iter = static_cast<int>(values[0]);
    r.f = values[1];
    r.merit = values[2];
    r.step_norm = values[3];
    r.alpha = values[4];
    r.violation = values[5];
    r.elapsed_ms = values[6];
    records.push_back(r);
  }
  return records;
}

}  // namespace surropt
