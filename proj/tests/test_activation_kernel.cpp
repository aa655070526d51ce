#include <doctest.h>

#include <cmath>

#include "support/test_support.hpp"
#include "surropt/activation.hpp"
#include "surropt/errors.hpp"
#include "surropt/kernel.hpp"

using namespace surropt;
using namespace surropt::testing;

TEST_CASE("swish at zero") {
  const auto [v, d1, d2] = activation_eval(Activation::Swish, 0.0);
  CHECK(v == doctest::Approx(0.0));
  CHECK(d1 == doctest::Approx(0.5));
  CHECK(d2 == doctest::Approx(0.5));
}

TEST_CASE("swish at 10 against direct scalar evaluation") {
  const double sigma = 1.0 / (1.0 + std::exp(-10.0));
  const auto [v, d1, d2] = activation_eval(Activation::Swish, 10.0);
  CHECK(v == doctest::Approx(10.0 * sigma).epsilon(1e-14));
  CHECK(v == doctest::Approx(9.999546).epsilon(1e-6));
  const double s1 = sigma * (1.0 - sigma);
  CHECK(d1 == doctest::Approx(sigma + 10.0 * s1).epsilon(1e-14));
  CHECK(d2 == doctest::Approx(2.0 * s1 + 10.0 * s1 * (1.0 - 2.0 * sigma))
                  .epsilon(1e-12));
}

TEST_CASE("tanh at zero") {
  const auto [v, d1, d2] = activation_eval(Activation::Tanh, 0.0);
  CHECK(v == 0.0);
  CHECK(d1 == 1.0);
  CHECK(d2 == 0.0);
}

TEST_CASE("activation derivatives match scalar finite differences") {
  for (const Activation kind :
       {Activation::Swish, Activation::Tanh, Activation::Sigmoid}) {
    for (const double z : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
      const double h = 1e-6 * (1.0 + std::abs(z));
      const auto at = [&](double t) { return activation_eval(kind, t); };
      const double fd1 = (at(z + h).value - at(z - h).value) / (2.0 * h);
      const double fd2 = (at(z + h).d1 - at(z - h).d1) / (2.0 * h);
      const auto [v, d1, d2] = at(z);
      CHECK(d1 == doctest::Approx(fd1).epsilon(1e-7));
      CHECK(d2 == doctest::Approx(fd2).epsilon(1e-7));
    }
  }
}

TEST_CASE("unknown activation name is a configuration error") {
  CHECK_THROWS_AS(activation_from_string("relu"), ConfigError);
}

TEST_CASE("rbf kernel at x = xi") {
  Vector x(3);
  x << 0.5, -1.0, 2.0;
  const auto kd = kernel_eval(Kernel::rbf(1.0), x, x);
  CHECK(kd.value == doctest::Approx(1.0));
  CHECK(kd.grad.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((kd.hess + 2.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
}

TEST_CASE("linear kernel is bilinear") {
  Vector x(2), xi(2);
  x << 1.0, 0.0;
  xi << 0.0, 1.0;
  const auto kd = kernel_eval(Kernel::linear(), x, xi);
  CHECK(kd.value == 0.0);
  CHECK((kd.grad - xi).cwiseAbs().maxCoeff() == 0.0);
  CHECK(kd.hess.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel derivatives match finite differences") {
  Rng rng(42);
  const std::vector<Kernel> kernels = {Kernel::rbf(0.8), Kernel::linear(),
                                       Kernel::polynomial(2, 1.0),
                                       Kernel::polynomial(3, 0.5)};
  for (const auto& kernel : kernels) {
    for (int trial = 0; trial < 5; ++trial) {
      const Vector x = random_vector(rng, 4);
      const Vector xi = random_vector(rng, 4);
      const auto kd = kernel_eval(kernel, x, xi);

      const Matrix fd_grad = fd_jacobian(
          [&](const Vector& p) {
            return Vector::Constant(1, kernel_eval(kernel, p, xi).value);
          },
          x, 1e-6);
      CHECK(max_mixed_rel_error(kd.grad.transpose(), fd_grad) < 1e-6);

      const Matrix fd_hess = fd_hessian_of_gradient(
          [&](const Vector& p) { return kernel_eval(kernel, p, xi).grad; }, x,
          1e-6);
      CHECK(max_mixed_rel_error(kd.hess, fd_hess) < 1e-6);
      CHECK((kd.hess - kd.hess.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("invalid kernel parameters are configuration errors") {
  CHECK_THROWS_AS(Kernel::rbf(0.0), ConfigError);
  CHECK_THROWS_AS(Kernel::rbf(-1.0), ConfigError);
  CHECK_THROWS_AS(Kernel::polynomial(0), ConfigError);
}
