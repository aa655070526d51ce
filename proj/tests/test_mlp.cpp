#include <doctest.h>

#include "support/test_support.hpp"
#include "surropt/errors.hpp"
#include "surropt/mlp.hpp"

using namespace surropt;
using namespace surropt::testing;

TEST_CASE("affine-only mlp: identity map") {
  MlpModel model({2, 2}, {Matrix::Identity(2, 2)}, {Vector::Zero(2)},
                 std::vector<Activation>{});
  Vector x(2);
  x << 1.0, 2.0;
  const EvalTriple t = model.eval(x);
  CHECK((t.value - x).cwiseAbs().maxCoeff() == 0.0);
  CHECK((t.jacobian - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.hessians[0].cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.hessians[1].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single swish neuron at zero") {
  MlpModel model({1, 1, 1}, {Matrix::Ones(1, 1), Matrix::Ones(1, 1)},
                 {Vector::Zero(1), Vector::Zero(1)}, Activation::Swish);
  const EvalTriple t = model.eval(Vector::Zero(1));
  CHECK(t.value[0] == doctest::Approx(0.0));
  CHECK(t.jacobian(0, 0) == doctest::Approx(0.5));
  CHECK(t.hessians[0](0, 0) == doctest::Approx(0.5));
}

TEST_CASE("random mlp derivatives match finite differences") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int m = 1 + static_cast<int>(rng.below(2));
    const auto model = random_mlp(rng, n, m, 3);
    const Vector x = random_vector(rng, n);
    const EvalTriple t = model->eval(x);

    const Matrix fd_jac =
        fd_jacobian([&](const Vector& p) { return model->value(p); }, x);
    CHECK(max_mixed_rel_error(t.jacobian, fd_jac) < 1e-5);

    for (int j = 0; j < m; ++j) {
      const Matrix fd_hess = fd_hessian_of_gradient(
          [&](const Vector& p) {
            return Vector(model->eval(p).jacobian.row(j).transpose());
          },
          x);
      CHECK(max_mixed_rel_error(t.hessians[j], fd_hess) < 1e-3);
      CHECK((t.hessians[j] - t.hessians[j].transpose()).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("value() agrees with eval().value") {
  Rng rng(11);
  const auto model = random_mlp(rng, 3, 2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector x = random_vector(rng, 3);
    CHECK((model->value(x) - model->eval(x).value).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("mlp shape and finiteness errors") {
  CHECK_THROWS_AS(MlpModel({2, 3}, {Matrix::Zero(2, 2)}, {Vector::Zero(3)},
                           std::vector<Activation>{}),
                  ShapeError);
  Matrix bad = Matrix::Ones(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(MlpModel({2, 2}, {bad}, {Vector::Zero(2)},
                           std::vector<Activation>{}),
                  NumericError);

  MlpModel model({2, 2}, {Matrix::Identity(2, 2)}, {Vector::Zero(2)},
                 std::vector<Activation>{});
  CHECK_THROWS_AS(model.eval(Vector::Zero(3)), ShapeError);
  Vector nan_input = Vector::Zero(2);
  nan_input[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(model.eval(nan_input), NumericError);
}
