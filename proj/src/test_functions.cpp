#include "surropt/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "surropt/errors.hpp"

namespace surropt {

namespace {

enum class Fn { Sphere, Quadratic, Camel, Schaffer2, Griewank, Ackley };

Fn fn_of(const std::string& name) {
  if (name == "sphere") return Fn::Sphere;
  if (name == "quadratic") return Fn::Quadratic;
  if (name == "six_hump_camel") return Fn::Camel;
  if (name == "schaffer2") return Fn::Schaffer2;
  if (name == "griewank") return Fn::Griewank;
  if (name == "ackley") return Fn::Ackley;
  throw ConfigError("unknown test function '" + name + "'");
}

double sphere_value(const Vector& x) { return x.squaredNorm(); }

double quadratic_value(const Vector& x) {
  double v = x.squaredNorm();
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double diff = x[i] - x[i + 1];
    v += diff * diff;
  }
  return v;
}

Matrix quadratic_hessian(Eigen::Index n) {
  Matrix h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 2.0;
    if (i + 1 < n) diag += 2.0;
    if (i > 0) diag += 2.0;
    h(i, i) = diag;
    if (i + 1 < n) h(i, i + 1) = h(i + 1, i) = -2.0;
  }
  return h;
}

double camel_value(const Vector& x) {
  const double x1 = x[0], x2 = x[1];
  return (4.0 - 2.1 * x1 * x1 + std::pow(x1, 4) / 3.0) * x1 * x1 + x1 * x2 +
         4.0 * (-1.0 + x2 * x2) * x2 * x2;
}

Vector camel_gradient(const Vector& x) {
  const double x1 = x[0], x2 = x[1];
  Vector g(2);
  g[0] = 8.0 * x1 - 8.4 * std::pow(x1, 3) + 2.0 * std::pow(x1, 5) + x2;
  g[1] = x1 - 8.0 * x2 + 16.0 * std::pow(x2, 3);
  return g;
}

Matrix camel_hessian(const Vector& x) {
  const double x1 = x[0], x2 = x[1];
  Matrix h(2, 2);
  h(0, 0) = 8.0 - 25.2 * x1 * x1 + 10.0 * std::pow(x1, 4);
  h(0, 1) = h(1, 0) = 1.0;
  h(1, 1) = -8.0 + 48.0 * x2 * x2;
  return h;
}

// f = 0.5 + (sin^2(u) - 0.5) / (1 + 0.001 v)^2, u = x1^2 - x2^2, v = x1^2 + x2^2
double schaffer_value(const Vector& x) {
  const double u = x[0] * x[0] - x[1] * x[1];
  const double v = x.squaredNorm();
  const double s = std::sin(u);
  const double den = 1.0 + 0.001 * v;
  return 0.5 + (s * s - 0.5) / (den * den);
}

Vector schaffer_gradient(const Vector& x) {
  const double u = x[0] * x[0] - x[1] * x[1];
  const double v = x.squaredNorm();
  const double N = std::sin(u) * std::sin(u) - 0.5;
  const double Nu = std::sin(2.0 * u);
  const double D = (1.0 + 0.001 * v) * (1.0 + 0.001 * v);
  const double Dv = 0.002 * (1.0 + 0.001 * v);
  Vector du(2), dv(2);
  du << 2.0 * x[0], -2.0 * x[1];
  dv << 2.0 * x[0], 2.0 * x[1];
  return (Nu / D) * du - (N * Dv / (D * D)) * dv;
}

Matrix schaffer_hessian(const Vector& x) {
  const double u = x[0] * x[0] - x[1] * x[1];
  const double v = x.squaredNorm();
  const double N = std::sin(u) * std::sin(u) - 0.5;
  const double Nu = std::sin(2.0 * u);
  const double Nuu = 2.0 * std::cos(2.0 * u);
  const double base = 1.0 + 0.001 * v;
  const double D = base * base;
  const double Dv = 0.002 * base;
  const double Dvv = 2e-6;
  Vector du(2), dv(2);
  du << 2.0 * x[0], -2.0 * x[1];
  dv << 2.0 * x[0], 2.0 * x[1];
  Matrix d2u = Matrix::Zero(2, 2), d2v = Matrix::Zero(2, 2);
  d2u(0, 0) = 2.0;
  d2u(1, 1) = -2.0;
  d2v(0, 0) = d2v(1, 1) = 2.0;

  const Matrix NN = Nuu * (du * du.transpose()) + Nu * d2u;  // Hessian of N
  const Matrix DD = Dvv * (dv * dv.transpose()) + Dv * d2v;  // Hessian of D
  const Vector gN = Nu * du;
  const Vector gD = Dv * dv;
  Matrix h = NN / D;
  h -= (gN * gD.transpose() + gD * gN.transpose()) / (D * D);
  h += (2.0 * N / (D * D * D)) * (gD * gD.transpose());
  h -= (N / (D * D)) * DD;
  return h;
}

double griewank_value(const Vector& x) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + x.squaredNorm() / 4000.0 - prod;
}

Vector griewank_gradient(const Vector& x) {
  const auto n = x.size();
  Vector c(n), s(n), scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    scale[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    c[i] = std::cos(x[i] * scale[i]);
    s[i] = std::sin(x[i] * scale[i]);
  }
  Vector g(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double prod_others = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) prod_others *= c[i];
    }
    g[j] = x[j] / 2000.0 + s[j] * scale[j] * prod_others;
  }
  return g;
}

Matrix griewank_hessian(const Vector& x) {
  const auto n = x.size();
  Vector c(n), s(n), scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    scale[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    c[i] = std::cos(x[i] * scale[i]);
    s[i] = std::sin(x[i] * scale[i]);
  }
  Matrix h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k <= j; ++k) {
      double prod = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i != j && i != k) prod *= c[i];
      }
      if (j == k) {
        h(j, j) = 1.0 / 2000.0 + c[j] * scale[j] * scale[j] * prod;
      } else {
        h(j, k) = h(k, j) = -s[j] * scale[j] * s[k] * scale[k] * prod;
      }
    }
  }
  return h;
}

// f = -20 exp(-0.2 sqrt(v/n)) - exp(sum cos(2 pi x_i)/n) + 20 + e.
// The radial term has a gradient singularity at x = 0; evaluation guards it
// (the value there is exact, derivative calls return the symmetric choice 0
// for the gradient and leave the cosine part in the Hessian).
double ackley_value(const Vector& x) {
  const double n = static_cast<double>(x.size());
  double cos_sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    cos_sum += std::cos(2.0 * std::numbers::pi * x[i]);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(x.squaredNorm() / n)) -
         std::exp(cos_sum / n) + 20.0 + std::numbers::e;
}

Vector ackley_gradient(const Vector& x) {
  const auto dim = x.size();
  const double n = static_cast<double>(dim);
  const double two_pi = 2.0 * std::numbers::pi;
  const double r = std::sqrt(x.squaredNorm() / n);
  double cos_sum = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) cos_sum += std::cos(two_pi * x[i]);
  const double e2 = std::exp(cos_sum / n);

  Vector g(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    g[i] = e2 * (two_pi / n) * std::sin(two_pi * x[i]);
  }
  if (r > 1e-150) {
    const double e1 = std::exp(-0.2 * r);
    g += (4.0 * e1 / (n * r)) * x;
  }
  return g;
}

Matrix ackley_hessian(const Vector& x) {
  const auto dim = x.size();
  const double n = static_cast<double>(dim);
  const double two_pi = 2.0 * std::numbers::pi;
  const double r = std::sqrt(x.squaredNorm() / n);
  double cos_sum = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) cos_sum += std::cos(two_pi * x[i]);
  const double e2 = std::exp(cos_sum / n);

  Matrix h = Matrix::Zero(dim, dim);
  // cosine part: d/dxj [ e2 * (2pi/n) sin(2pi xi) ]
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double si = std::sin(two_pi * x[i]);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double sj = std::sin(two_pi * x[j]);
      double v = -e2 * (two_pi / n) * si * (two_pi / n) * sj;
      if (i == j) v += e2 * (two_pi * two_pi / n) * std::cos(two_pi * x[i]);
      h(i, j) = h(j, i) = v;
    }
  }
  if (r > 1e-150) {
    // radial part: grad = (4 e1 / (n r)) x, e1 = exp(-0.2 r),
    // dr/dx = x / (n r)
    const double e1 = std::exp(-0.2 * r);
    const double coeff = 4.0 * e1 / (n * r);
    const Vector dr = x / (n * r);
    h += coeff * Matrix::Identity(dim, dim);
    h += (x * dr.transpose()) * (-0.2 * coeff - 4.0 * e1 / (n * r * r));
  }
  return h;
}

std::vector<TestFunction> build_table() {
  std::vector<TestFunction> table;
  const auto origin = [](int n) { return Vector::Zero(n); };

  table.push_back({"sphere", 10, 0.0, {origin(10)}});
  table.push_back({"quadratic", 10, 0.0, {origin(10)}});
  Vector m1(2), m2(2);
  m1 << 0.09, -0.71;
  m2 << -0.09, 0.71;
  table.push_back({"six_hump_camel", 2, -1.03, {m1, m2}});
  table.push_back({"schaffer2", 2, 0.0, {origin(2)}});
  table.push_back({"griewank", 5, 0.0, {origin(5)}});
  table.push_back({"ackley", 5, 0.0, {origin(5)}});
  return table;
}

}  // namespace

double TestFunction::value(const Vector& x) const {
  if (static_cast<int>(x.size()) != dim) {
    throw ShapeError(name + " expects dimension " + std::to_string(dim) +
                     ", got " + std::to_string(x.size()));
  }
  switch (fn_of(name)) {
    case Fn::Sphere:
      return sphere_value(x);
    case Fn::Quadratic:
      return quadratic_value(x);
    case Fn::Camel:
      return camel_value(x);
    case Fn::Schaffer2:
      return schaffer_value(x);
    case Fn::Griewank:
      return griewank_value(x);
    case Fn::Ackley:
      return ackley_value(x);
  }
  throw ConfigError("unreachable");
}

Vector TestFunction::gradient(const Vector& x) const {
  if (static_cast<int>(x.size()) != dim) {
    throw ShapeError(name + " expects dimension " + std::to_string(dim));
  }
  switch (fn_of(name)) {
    case Fn::Sphere:
      return 2.0 * x;
    case Fn::Quadratic: {
      return quadratic_hessian(x.size()) * x;  // purely quadratic form
    }
    case Fn::Camel:
      return camel_gradient(x);
    case Fn::Schaffer2:
      return schaffer_gradient(x);
    case Fn::Griewank:
      return griewank_gradient(x);
    case Fn::Ackley:
      return ackley_gradient(x);
  }
  throw ConfigError("unreachable");
}

Matrix TestFunction::hessian(const Vector& x) const {
  if (static_cast<int>(x.size()) != dim) {
    throw ShapeError(name + " expects dimension " + std::to_string(dim));
  }
  switch (fn_of(name)) {
    case Fn::Sphere:
      return 2.0 * Matrix::Identity(dim, dim);
    case Fn::Quadratic:
      return quadratic_hessian(dim);
    case Fn::Camel:
      return camel_hessian(x);
    case Fn::Schaffer2:
      return schaffer_hessian(x);
    case Fn::Griewank:
      return griewank_hessian(x);
    case Fn::Ackley:
      return ackley_hessian(x);
  }
  throw ConfigError("unreachable");
}

double TestFunction::distance_to_minimizer(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : minimizers) best = std::min(best, (x - p).norm());
  return best;
}

const std::vector<TestFunction>& test_functions() {
  static const std::vector<TestFunction> table = build_table();
  return table;
}

const TestFunction* find_test_function(std::string_view name) {
  for (const auto& fn : test_functions()) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

const TestFunction& test_function(std::string_view name) {
  const TestFunction* fn = find_test_function(name);
  if (!fn) throw ConfigError("unknown test function '" + std::string(name) + "'");
  return *fn;
}

double test_function_eval(std::string_view name, const Vector& x) {
  return test_function(name).value(x);
}

std::shared_ptr<const SurrogateModel> make_test_function_surrogate(
    const TestFunction& fn) {
  TestFunction copy = fn;
  return std::make_shared<AnalyticAdapter>(
      fn.dim, 1,
      [copy](const Vector& x) {
        EvalTriple t;
        t.value = Vector::Constant(1, copy.value(x));
        t.jacobian = copy.gradient(x).transpose();
        t.hessians = {copy.hessian(x)};
        return t;
      },
      "analytic:" + fn.name);
}

}  // namespace surropt
