#include "mqida/bfgs.hpp"

#include <cmath>
#include <limits>

namespace mqida {

namespace {

struct Eval {
  double f = 0.0;
  Eigen::VectorXd g;
};

struct LineSearchResult {
  double alpha = 0.0;
  Eval at;
  bool ok = false;
};

// Strong-Wolfe line search (Nocedal & Wright alg. 3.5/3.6).
LineSearchResult line_search(const Objective& obj, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& p, const Eval& e0,
                             double c1, double c2, int& n_evals) {
  const double phi0 = e0.f;
  const double dphi0 = e0.g.dot(p);
  if (dphi0 >= 0) return {};

  auto eval_at = [&](double a) {
    Eval e;
    e.g.resize(x.size());
    e.f = obj(x + a * p, e.g);
    ++n_evals;
    return e;
  };

  auto zoom = [&](double lo, double hi, Eval elo) -> LineSearchResult {
    for (int it = 0; it < 30; ++it) {
      const double a = 0.5 * (lo + hi);
      Eval e = eval_at(a);
      const double dphi = e.g.dot(p);
      if (e.f > phi0 + c1 * a * dphi0 || e.f >= elo.f) {
        hi = a;
      } else {
        if (std::abs(dphi) <= -c2 * dphi0) return {a, std::move(e), true};
        if (dphi * (hi - lo) >= 0) hi = lo;
        lo = a;
        elo = std::move(e);
      }
      if (std::abs(hi - lo) < 1e-16) break;
    }
    return {lo, std::move(elo), lo > 0};
  };

  double a_prev = 0.0, a = 1.0;
  Eval e_prev = e0;
  for (int it = 0; it < 30; ++it) {
    Eval e = eval_at(a);
    const double dphi = e.g.dot(p);
    if (e.f > phi0 + c1 * a * dphi0 || (it > 0 && e.f >= e_prev.f))
      return zoom(a_prev, a, std::move(e_prev));
    if (std::abs(dphi) <= -c2 * dphi0) return {a, std::move(e), true};
    if (dphi >= 0) return zoom(a, a_prev, std::move(e));
    a_prev = a;
    e_prev = std::move(e);
    a *= 2.0;
    if (a > 1e8) break;
  }
  return {};
}

}  // namespace

BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& opts) {
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = x0;

  Eval cur;
  cur.g.resize(n);
  cur.f = f(res.x, cur.g);
  res.n_evals = 1;

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  for (int it = 0; it < opts.max_iters; ++it) {
    res.iterations = it;
    res.grad_norm = cur.g.cwiseAbs().maxCoeff();
    if (res.grad_norm <= opts.grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd p = -(h_inv * cur.g);
    LineSearchResult ls =
        line_search(f, res.x, p, cur, opts.c1, opts.c2, res.n_evals);
    if (!ls.ok) {
      // Retry once along steepest descent before giving up.
      p = -cur.g;
      ls = line_search(f, res.x, p, cur, opts.c1, opts.c2, res.n_evals);
      if (!ls.ok) break;
      h_inv.setIdentity();
    }
    const Eigen::VectorXd s = ls.alpha * p;
    const Eigen::VectorXd y = ls.at.g - cur.g;
    res.x += s;
    cur = std::move(ls.at);
    if (opts.on_iteration) opts.on_iteration(it, cur.f);

    const double sy = s.dot(y);
    if (sy > 1e-14) {
      if (it == 0) h_inv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h_inv * y;
      // Sherman-Morrison form of the BFGS inverse update.
      h_inv.noalias() -= rho * (hy * s.transpose() + s * hy.transpose());
      h_inv.noalias() +=
          (rho * rho * (y.dot(hy)) + rho) * (s * s.transpose());
    }
  }
  res.value = cur.f;
  res.grad_norm = cur.g.size() ? cur.g.cwiseAbs().maxCoeff() : 0.0;
  if (res.grad_norm <= opts.grad_tol) res.converged = true;
  return res;
}

}  // namespace mqida
