#include "surropt/surrogate.hpp"

#include <utility>

#include "surropt/errors.hpp"

namespace surropt {

void SurrogateModel::check_input(const Vector& x) const {
  if (static_cast<int>(x.size()) != input_dim()) {
    throw ShapeError("surrogate input has length " + std::to_string(x.size()) +
                     ", model expects " + std::to_string(input_dim()));
  }
  if (!x.allFinite()) {
    throw NumericError("surrogate input contains non-finite entries");
  }
}

AnalyticAdapter::AnalyticAdapter(int input_dim, int output_dim, EvalFn fn,
                                 std::string label)
    : input_dim_(input_dim),
      output_dim_(output_dim),
      fn_(std::move(fn)),
      label_(std::move(label)) {
  if (input_dim_ <= 0 || output_dim_ <= 0) {
    throw ConfigError("AnalyticAdapter dimensions must be positive");
  }
  if (!fn_) {
    throw ConfigError("AnalyticAdapter requires an evaluation function");
  }
}

AnalyticAdapter AnalyticAdapter::identity(int n) {
  return AnalyticAdapter(
      n, n,
      [n](const Vector& x) {
        EvalTriple t;
        t.value = x;
        t.jacobian = Matrix::Identity(n, n);
        t.hessians.assign(n, Matrix::Zero(n, n));
        return t;
      },
      "analytic:identity");
}

Vector AnalyticAdapter::value(const Vector& x) const {
  check_input(x);
  return fn_(x).value;
}

EvalTriple AnalyticAdapter::eval(const Vector& x) const {
  check_input(x);
  EvalTriple t = fn_(x);
  if (t.value.size() != output_dim_ ||
      t.jacobian.rows() != output_dim_ ||
      t.jacobian.cols() != input_dim_ ||
      static_cast<int>(t.hessians.size()) != output_dim_) {
    throw ShapeError("AnalyticAdapter callback returned inconsistent shapes");
  }
  return t;
}

}  // namespace surropt
