#include <doctest.h>

#include "support/test_support.hpp"
#include "surropt/errors.hpp"
#include "surropt/svr.hpp"

using namespace surropt;
using namespace surropt::testing;

TEST_CASE("single rbf support vector evaluated at itself") {
  Matrix sv(1, 3);
  sv << 0.2, -0.5, 1.0;
  SvrModel model(sv, Vector::Ones(1), 0.0, Kernel::rbf(1.0));
  const EvalTriple t = model.eval(sv.row(0).transpose());
  CHECK(t.value[0] == doctest::Approx(1.0));
  CHECK(t.jacobian.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((t.hessians[0] + 2.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
}

TEST_CASE("linear kernel svr has exactly zero hessian") {
  Rng rng(3);
  Matrix sv(4, 2);
  for (int i = 0; i < 4; ++i) sv.row(i) = random_vector(rng, 2).transpose();
  SvrModel model(sv, random_vector(rng, 4, -1.0, 1.0), 0.3, Kernel::linear());
  const EvalTriple t = model.eval(random_vector(rng, 2));
  CHECK(t.hessians[0].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random svr derivatives match finite differences") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const auto model = random_svr(rng, n);
    const Vector x = random_vector(rng, n);
    const EvalTriple t = model->eval(x);

    const Matrix fd_jac =
        fd_jacobian([&](const Vector& p) { return model->value(p); }, x);
    CHECK(max_mixed_rel_error(t.jacobian, fd_jac) < 1e-5);

    const Matrix fd_hess = fd_hessian_of_gradient(
        [&](const Vector& p) {
          return Vector(model->eval(p).jacobian.row(0).transpose());
        },
        x);
    CHECK(max_mixed_rel_error(t.hessians[0], fd_hess) < 1e-3);
  }
}

TEST_CASE("empty support set is a configuration error") {
  CHECK_THROWS_AS(
      SvrModel(Matrix(0, 2), Vector(0), 0.0, Kernel::rbf(1.0)), ConfigError);
}

TEST_CASE("coefficient length mismatch is a shape error") {
  CHECK_THROWS_AS(
      SvrModel(Matrix::Ones(3, 2), Vector::Ones(2), 0.0, Kernel::rbf(1.0)),
      ShapeError);
}
