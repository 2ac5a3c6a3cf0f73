#include <doctest.h>

#include <cmath>

#include "mqida/bfgs.hpp"

using namespace mqida;

TEST_CASE("quadratic bowl converges to the analytic minimum") {
  // f = 0.5 x^T A x - b^T x with SPD A.
  Eigen::Matrix3d a;
  a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const Eigen::Vector3d b(1.0, -2.0, 0.5);
  Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = a * x - b;
    return 0.5 * x.dot(a * x) - b.dot(x);
  };
  const BfgsResult r = bfgs_minimize(f, Eigen::Vector3d(5, -3, 9));
  const Eigen::Vector3d want = a.ldlt().solve(b);
  CHECK(r.converged);
  CHECK((r.x - want).norm() < 1e-6);
  CHECK(r.grad_norm <= 1e-6);
}

TEST_CASE("Rosenbrock valley") {
  Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    g.resize(2);
    g[0] = -2 * a - 400 * x[0] * b;
    g[1] = 200 * b;
    return a * a + 100 * b * b;
  };
  const BfgsResult r = bfgs_minimize(f, Eigen::Vector2d(-1.2, 1.0));
  CHECK(r.converged);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-5);
}

TEST_CASE("iteration callback sees a non-increasing incumbent") {
  Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = 2 * x;
    return x.squaredNorm();
  };
  BfgsOptions opts;
  double incumbent = 1e300;
  bool monotone = true;
  int calls = 0;
  opts.on_iteration = [&](int, double v) {
    if (v > incumbent + 1e-12) monotone = false;
    incumbent = std::min(incumbent, v);
    ++calls;
  };
  Eigen::VectorXd x0(4);
  x0 << 3, -1, 2, 7;
  const BfgsResult r = bfgs_minimize(f, x0, opts);
  CHECK(r.converged);
  CHECK(monotone);
  CHECK(calls == r.iterations);
}

TEST_CASE("max iteration cap is respected") {
  Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    g.resize(2);
    g[0] = -2 * a - 400 * x[0] * b;
    g[1] = 200 * b;
    return a * a + 100 * b * b;
  };
  BfgsOptions opts;
  opts.max_iters = 3;
  const BfgsResult r = bfgs_minimize(f, Eigen::Vector2d(-1.2, 1.0), opts);
  CHECK(r.iterations <= 3);
  CHECK_FALSE(r.converged);
}
