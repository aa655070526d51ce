#include "surropt/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "surropt/errors.hpp"

namespace surropt {

namespace {

constexpr double kFeasTol = 1e-9;

void check_shapes(const QpProblem& qp) {
  const int n = qp.dim();
  if (qp.B.rows() != n || qp.B.cols() != n) {
    throw ShapeError("solve_qp: B must be n x n");
  }
  if (qp.A_eq.rows() != qp.b_eq.size() ||
      (qp.A_eq.rows() > 0 && qp.A_eq.cols() != n)) {
    throw ShapeError("solve_qp: equality block shape mismatch");
  }
  if (qp.A_in.rows() != qp.b_in.size() ||
      (qp.A_in.rows() > 0 && qp.A_in.cols() != n)) {
    throw ShapeError("solve_qp: inequality block shape mismatch");
  }
  if ((qp.B - qp.B.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ShapeError("solve_qp: B must be symmetric");
  }
}

/// Solves  min 1/2 z'Bz + g'z  s.t. rows in `active` tight, from a feasible
/// start. The working set holds inequality indices; equalities are permanent.
struct ActiveSetCore {
  const Matrix& B;
  const Vector& g;
  const Matrix& A_eq;
  const Vector& b_eq;
  const Matrix& A_in;
  const Vector& b_in;
  double tol;
  int max_iter;

  Vector z;                 // current feasible iterate
  std::vector<int> active;  // working set (sorted, inequality indices)
  Vector lambda;            // equality multipliers at the last KKT solve
  Vector mu_active;         // multipliers of the working set
  int iterations = 0;

  // Solves the KKT system of the equality-constrained subproblem
  //   [B  A'][p ]   [-(Bz + g)]
  //   [A  0 ][y ] = [ b_act - A z ]
  // returning the step p and multipliers y = [lambda; mu_active].
  bool kkt_step(Vector& p) {
    const int n = static_cast<int>(z.size());
    const int rows = static_cast<int>(b_eq.size()) + static_cast<int>(active.size());
    Matrix kkt = Matrix::Zero(n + rows, n + rows);
    Vector rhs(n + rows);
    kkt.topLeftCorner(n, n) = B;
    rhs.head(n) = -(B * z + g);
    int r = 0;
    for (Eigen::Index e = 0; e < b_eq.size(); ++e, ++r) {
      kkt.block(n + r, 0, 1, n) = A_eq.row(e);
      kkt.block(0, n + r, n, 1) = A_eq.row(e).transpose();
      rhs[n + r] = b_eq[e] - A_eq.row(e).dot(z);
    }
    for (int idx : active) {
      kkt.block(n + r, 0, 1, n) = A_in.row(idx);
      kkt.block(0, n + r, n, 1) = A_in.row(idx).transpose();
      rhs[n + r] = b_in[idx] - A_in.row(idx).dot(z);
      ++r;
    }

    Eigen::FullPivLU<Matrix> lu(kkt);
    Vector sol;
    if (lu.isInvertible()) {
      sol = lu.solve(rhs);
    } else {
      // Degenerate working set; fall back to a least-squares solution.
      sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    }
    if (!sol.allFinite()) return false;
    p = sol.head(n);
    lambda = sol.segment(n, b_eq.size());
    mu_active = sol.tail(active.size());
    return true;
  }

  QpStatus run() {
    Vector p;
    while (iterations++ < max_iter) {
      if (!kkt_step(p)) return QpStatus::MaxIter;

      const double step_scale = 1.0 + z.cwiseAbs().maxCoeff();
      if (p.cwiseAbs().maxCoeff() <= tol * step_scale) {
        // Stationary on the working set; check dual feasibility.
        int drop = -1;
        for (std::size_t i = 0; i < active.size(); ++i) {
          if (mu_active[static_cast<Eigen::Index>(i)] < -tol) {
            drop = static_cast<int>(i);
            break;  // smallest working-set index first (anti-cycling)
          }
        }
        if (drop < 0) return QpStatus::Optimal;
        active.erase(active.begin() + drop);
        continue;
      }

      // Step length: nearest blocking inequality not in the working set.
      double alpha = 1.0;
      int blocking = -1;
      for (Eigen::Index i = 0; i < b_in.size(); ++i) {
        if (std::find(active.begin(), active.end(), static_cast<int>(i)) !=
            active.end()) {
          continue;
        }
        const double ap = A_in.row(i).dot(p);
        if (ap <= 1e-13 * (1.0 + A_in.row(i).cwiseAbs().maxCoeff())) continue;
        const double ratio = std::max(0.0, (b_in[i] - A_in.row(i).dot(z)) / ap);
        if (ratio < alpha - 1e-14) {
          alpha = ratio;
          blocking = static_cast<int>(i);
        }
      }

      z += alpha * p;
      if (blocking >= 0) {
        active.insert(
            std::upper_bound(active.begin(), active.end(), blocking), blocking);
      }
    }
    return QpStatus::MaxIter;
  }
};

/// Minimum-norm solution of A_eq d = b_eq; returns false when inconsistent.
bool equality_start(const Matrix& A_eq, const Vector& b_eq, int n, Vector& d) {
  if (b_eq.size() == 0) {
    d = Vector::Zero(n);
    return true;
  }
  d = A_eq.completeOrthogonalDecomposition().solve(b_eq);
  return (A_eq * d - b_eq).cwiseAbs().maxCoeff() <=
         kFeasTol * (1.0 + b_eq.cwiseAbs().maxCoeff());
}

}  // namespace

QpSolution solve_qp(const QpProblem& qp, const QpOptions& options) {
  check_shapes(qp);
  const int n = qp.dim();
  const int p_e = qp.num_eq();
  const int p_i = qp.num_in();
  const int max_iter =
      options.max_iter > 0 ? options.max_iter : 50 * (n + p_e + p_i);

  QpSolution sol;
  sol.lambda = Vector::Zero(p_e);
  sol.mu = Vector::Zero(p_i);

  Vector d0;
  if (!equality_start(qp.A_eq, qp.b_eq, n, d0)) {
    sol.d = Vector::Zero(n);
    sol.status = QpStatus::Infeasible;
    return sol;
  }

  // Phase 1: if d0 violates inequalities, minimize 1/2|s|^2 over (d, s) with
  // A_in d - s <= b_in. The epsilon term anchors d; any optimum with s ~ 0
  // is a feasible start for phase 2.
  if (p_i > 0 && (qp.A_in * d0 - qp.b_in).maxCoeff() > kFeasTol) {
    const double eps = 1e-8;
    const int nz = n + p_i;
    Matrix B1 = Matrix::Zero(nz, nz);
    B1.topLeftCorner(n, n) = eps * Matrix::Identity(n, n);
    B1.bottomRightCorner(p_i, p_i) = Matrix::Identity(p_i, p_i);
    Vector g1 = Vector::Zero(nz);
    g1.head(n) = -eps * d0;
    Matrix A_eq1(p_e, nz);
    if (p_e > 0) {
      A_eq1 << qp.A_eq, Matrix::Zero(p_e, p_i);
    }
    Matrix A_in1(p_i, nz);
    A_in1 << qp.A_in, -Matrix::Identity(p_i, p_i);

    ActiveSetCore phase1{B1,          g1,       A_eq1, qp.b_eq, A_in1,
                         qp.b_in,     options.tol, max_iter, {}, {}, {}, {}, 0};
    phase1.z = Vector::Zero(nz);
    phase1.z.head(n) = d0;
    phase1.z.tail(p_i) =
        (qp.A_in * d0 - qp.b_in).cwiseMax(0.0).array() + 1.0;
    if (phase1.run() != QpStatus::Optimal ||
        phase1.z.tail(p_i).cwiseAbs().maxCoeff() > 1e-7) {
      sol.d = Vector::Zero(n);
      sol.status = QpStatus::Infeasible;
      return sol;
    }
    d0 = phase1.z.head(n);
  }

  ActiveSetCore core{qp.B,    qp.g,        qp.A_eq,  qp.b_eq, qp.A_in,
                     qp.b_in, options.tol, max_iter, {},      {}, {}, {}, 0};
  core.z = d0;
  const QpStatus status = core.run();
  sol.status = status;
  sol.iterations = core.iterations;
  if (status != QpStatus::Optimal) {
    sol.d = core.z;
    return sol;
  }

  // Re-solve on the final working set in one shot; this removes the error
  // accumulated over the primal steps and makes equality-only problems agree
  // with a direct KKT solve to machine precision.
  core.z.setZero();
  Vector d_star;
  if (!core.kkt_step(d_star)) {
    sol.status = QpStatus::MaxIter;
    sol.d = d0;
    return sol;
  }
  sol.d = d_star;
  sol.lambda = core.lambda;
  for (std::size_t i = 0; i < core.active.size(); ++i) {
    sol.mu[core.active[i]] = core.mu_active[static_cast<Eigen::Index>(i)];
  }
  // Clamp multiplier round-off from the final solve.
  for (Eigen::Index i = 0; i < sol.mu.size(); ++i) {
    if (sol.mu[i] < 0.0 && sol.mu[i] > -options.tol) sol.mu[i] = 0.0;
  }
  sol.kkt_residual = kkt_residual(qp, sol);
  return sol;
}

double kkt_residual(const QpProblem& qp, const QpSolution& sol) {
  Vector stationarity = qp.B * sol.d + qp.g;
  if (qp.num_eq() > 0) stationarity += qp.A_eq.transpose() * sol.lambda;
  if (qp.num_in() > 0) stationarity += qp.A_in.transpose() * sol.mu;
  double res = stationarity.cwiseAbs().maxCoeff();

  if (qp.num_eq() > 0) {
    res = std::max(res, (qp.A_eq * sol.d - qp.b_eq).cwiseAbs().maxCoeff());
  }
  if (qp.num_in() > 0) {
    const Vector slack = qp.A_in * sol.d - qp.b_in;
    res = std::max(res, slack.cwiseMax(0.0).maxCoeff());       // primal
    res = std::max(res, (-sol.mu).cwiseMax(0.0).maxCoeff());   // dual
    res = std::max(res, (sol.mu.array() * slack.array()).abs().maxCoeff());
  }
  return res;
}

}  // namespace surropt
