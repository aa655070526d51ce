#include "surropt/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "surropt/errors.hpp"

namespace surropt {

FitMetrics fit_metrics(const Matrix& pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ShapeError("fit_metrics: pred and target shapes differ");
  }
  if (pred.rows() == 0) throw ShapeError("fit_metrics: no rows");
  const auto rows = pred.rows();
  const auto cols = pred.cols();

  FitMetrics out;
  out.pearson_r.resize(cols);
  out.max_relative_error = Vector::Zero(cols);
  out.mse = (pred - target).squaredNorm() / static_cast<double>(rows * cols);

  for (Eigen::Index j = 0; j < cols; ++j) {
    const Vector p = pred.col(j);
    const Vector t = target.col(j);
    const double pm = p.mean();
    const double tm = t.mean();
    const Vector pc = p.array() - pm;
    const Vector tc = t.array() - tm;
    const double denom = std::sqrt(pc.squaredNorm() * tc.squaredNorm());
    if (tc.squaredNorm() <= 0.0) {
      throw NumericError("fit_metrics: target column " + std::to_string(j) +
                         " has zero variance, Pearson R undefined");
    }
    // A constant prediction column has no linear association; report R = 0.
    out.pearson_r[j] = denom > 0.0 ? pc.dot(tc) / denom : 0.0;

    double max_rel = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (std::abs(t[r]) > 1e-12) {
        max_rel = std::max(max_rel, std::abs(p[r] - t[r]) / std::abs(t[r]));
      }
    }
    out.max_relative_error[j] = max_rel;
  }
  return out;
}

}  // namespace surropt
