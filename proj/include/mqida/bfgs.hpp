#pragma once

#include <Eigen/Dense>
#include <functional>

namespace mqida {

/// Objective with analytic gradient: f(x, grad_out) -> value.
using Objective =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct BfgsOptions {
  double grad_tol = 1e-6;
  int max_iters = 10000;
  double c1 = 1e-4;  // Armijo
  double c2 = 0.9;   // curvature
  /// Called once per accepted iterate with (iteration, value).
  std::function<void(int, double)> on_iteration;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int n_evals = 0;
  bool converged = false;
};

/// BFGS with a strong-Wolfe line search (bracket + zoom).
BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& opts = {});

}  // namespace mqida
