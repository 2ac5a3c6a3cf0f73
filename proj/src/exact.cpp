#include "mqida/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace mqida {

namespace {

using ApplyFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct EigPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

// Lanczos with full reorthogonalization and restarts.
EigPair lowest_eigenpair(const ApplyFn& apply, Eigen::Index dim,
                         double tol = 1e-11, int max_basis = 260,
                         int max_restarts = 60) {
  std::mt19937_64 rng(0x51da5eedull);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v0(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v0[i] = gauss(rng);
  v0.normalize();

  EigPair best;
  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v0);
    Eigen::VectorXd w(dim);
    const int m_max = static_cast<int>(std::min<Eigen::Index>(max_basis, dim));
    for (int m = 0; m < m_max; ++m) {
      apply(basis.back(), w);
      alpha.push_back(basis.back().dot(w));
      for (const auto& b : basis) w -= b.dot(w) * b;
      for (const auto& b : basis) w -= b.dot(w) * b;  // second pass
      const double nw = w.norm();
      if (nw < 1e-13 || m + 1 == m_max) {
        beta.push_back(nw);
        break;
      }
      beta.push_back(nw);
      basis.push_back(w / nw);
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m)
        tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < static_cast<int>(basis.size()) && i < m; ++i)
      v += y[i] * basis[static_cast<std::size_t>(i)];
    v.normalize();

    apply(v, w);
    const double eval = v.dot(w);
    const double resid = (w - eval * v).norm();
    best.value = eval;
    best.vector = v;
    if (resid <= tol) break;
    v0 = v;
  }
  return best;
}

// Dense lowest eigenpair for small dimensions, built column by column.
EigPair dense_lowest(const ApplyFn& apply, Eigen::Index dim) {
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim), col(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    e[j] = 1.0;
    apply(e, col);
    h.col(j) = col;
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (h + h.transpose()));
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

EigPair solve_lowest(const ApplyFn& apply, Eigen::Index dim) {
  return dim <= 600 ? dense_lowest(apply, dim) : lowest_eigenpair(apply, dim);
}

struct CompiledTerm {
  std::uint64_t flip = 0;
  std::uint64_t phase = 0;
  double coeff = 0.0;  // real after folding i^{n_Y}; imaginary parts rejected
};

std::vector<CompiledTerm> compile_real_terms(const PauliHamiltonian& h) {
  std::vector<CompiledTerm> out;
  out.reserve(h.terms.size());
  for (const auto& t : h.terms) {
    CompiledTerm c;
    int n_y = 0;
    for (int q = 0; q < h.n_qubits; ++q) {
      const std::uint64_t bit = 1ull << (h.n_qubits - 1 - q);
      switch (t.ops[static_cast<std::size_t>(q)]) {
        case PauliOp::I: break;
        case PauliOp::X: c.flip |= bit; break;
        case PauliOp::Y: c.flip |= bit; c.phase |= bit; ++n_y; break;
        case PauliOp::Z: c.phase |= bit; break;
      }
    }
    if (n_y % 2 != 0)
      throw std::invalid_argument(
          "exact_ground_state: odd-Y Pauli strings give a complex matrix in "
          "the real working basis");
    c.coeff = (n_y % 4 == 2) ? -t.coefficient : t.coefficient;
    out.push_back(c);
  }
  return out;
}

}  // namespace

ExactResult exact_ground_state(const PauliHamiltonian& h, int max_qubits) {
  const int n = h.n_qubits;
  if (n < 1 || n > max_qubits)
    throw std::invalid_argument("exact_ground_state: qubit count exceeds cap");
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto terms = compile_real_terms(h);

  Eigen::VectorXd ground;
  double energy = 0.0;

  if (conserves_magnetization(h)) {
    // Solve per down-spin-count sector; ties go to the larger total Z
    // (fewer down spins).
    bool have = false;
    std::vector<std::uint64_t> ground_states;
    for (int k = 0; k <= n; ++k) {
      std::vector<std::uint64_t> states;
      for (std::uint64_t b = 0; b < dim; ++b)
        if (std::popcount(b) == k) states.push_back(b);
      std::vector<Eigen::Index> pos(dim, -1);
      for (std::size_t i = 0; i < states.size(); ++i)
        pos[states[i]] = static_cast<Eigen::Index>(i);

      ApplyFn apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y.setZero(static_cast<Eigen::Index>(states.size()));
        for (std::size_t i = 0; i < states.size(); ++i) {
          const std::uint64_t b = states[i];
          const double xi = x[static_cast<Eigen::Index>(i)];
          for (const auto& t : terms) {
            const Eigen::Index j = pos[b ^ t.flip];
            if (j < 0) continue;  // out-of-sector images cancel in the sum
            const double sign =
                (std::popcount(b & t.phase) & 1) ? -1.0 : 1.0;
            y[j] += t.coeff * sign * xi;
          }
        }
      };
      EigPair p = solve_lowest(apply, static_cast<Eigen::Index>(states.size()));
      if (!have || p.value < energy - 1e-10) {
        have = true;
        energy = p.value;
        ground = p.vector;
        ground_states = states;
      }
    }
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < ground_states.size(); ++i)
      full[static_cast<Eigen::Index>(ground_states[i])] =
          ground[static_cast<Eigen::Index>(i)];
    ground = std::move(full);
  } else {
    ApplyFn apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
      y.setZero(static_cast<Eigen::Index>(dim));
      for (std::uint64_t b = 0; b < dim; ++b) {
        const double xb = x[static_cast<Eigen::Index>(b)];
        if (xb == 0.0) continue;
        for (const auto& t : terms) {
          const double sign = (std::popcount(b & t.phase) & 1) ? -1.0 : 1.0;
          y[static_cast<Eigen::Index>(b ^ t.flip)] += t.coeff * sign * xb;
        }
      }
    };
    EigPair p = solve_lowest(apply, static_cast<Eigen::Index>(dim));
    energy = p.value;
    ground = p.vector;
  }

  // Deterministic sign.
  Eigen::Index imax = 0;
  ground.cwiseAbs().maxCoeff(&imax);
  if (ground[imax] < 0) ground = -ground;

  ExactResult res;
  res.energy = energy;
  res.state.n_qubits = n;
  res.state.amplitudes.assign(dim, Complex{0, 0});
  for (std::uint64_t b = 0; b < dim; ++b)
    res.state.amplitudes[b] = Complex{ground[static_cast<Eigen::Index>(b)], 0.0};

  std::vector<Complex> hv = apply_hamiltonian(h, res.state.amplitudes);
  double r2 = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b)
    r2 += std::norm(hv[b] - energy * res.state.amplitudes[b]);
  res.residual = std::sqrt(r2);
  return res;
}

}  // namespace mqida
