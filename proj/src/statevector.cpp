#include "mqida/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace mqida {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Matrix4d;

const Complex kI{0.0, 1.0};

Matrix2cd rx_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2cd m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

Matrix2cd ry_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2cd m;
  m << c, -s, s, c;
  return m;
}

Matrix2cd rz_matrix(double theta) {
  Matrix2cd m = Matrix2cd::Zero();
  m(0, 0) = std::exp(-kI * (theta / 2));
  m(1, 1) = std::exp(kI * (theta / 2));
  return m;
}

Matrix2cd pauli_matrix(GateKind kind) {
  Matrix2cd m;
  switch (kind) {
    case GateKind::RX: m << 0, 1, 1, 0; break;
    case GateKind::RY: m << 0, -kI, kI, 0; break;
    default:           m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix2cd rotation_matrix(GateKind kind, double theta) {
  switch (kind) {
    case GateKind::RX: return rx_matrix(theta);
    case GateKind::RY: return ry_matrix(theta);
    default:           return rz_matrix(theta);
  }
}

void apply_1q(std::vector<Complex>& amps, int n, int q, const Matrix2cd& u) {
  const std::uint64_t bit = 1ull << (n - 1 - q);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const Complex a0 = amps[b], a1 = amps[b | bit];
    amps[b] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[b | bit] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

// The 4x4 matrix index is 2*s(qa) + s(qb).
void apply_2q(std::vector<Complex>& amps, int n, int qa, int qb,
              const Matrix4cd& u) {
  const std::uint64_t ba = 1ull << (n - 1 - qa);
  const std::uint64_t bb = 1ull << (n - 1 - qb);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & (ba | bb)) continue;
    const std::uint64_t idx[4] = {b, b | bb, b | ba, b | ba | bb};
    Complex v[4];
    for (int k = 0; k < 4; ++k) v[k] = amps[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Complex acc{0, 0};
      for (int c = 0; c < 4; ++c) acc += u(r, c) * v[c];
      amps[idx[r]] = acc;
    }
  }
}

void apply_cnot(std::vector<Complex>& amps, int n, int control, int target) {
  const std::uint64_t bc = 1ull << (n - 1 - control);
  const std::uint64_t bt = 1ull << (n - 1 - target);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < dim; ++b)
    if ((b & bc) && !(b & bt)) std::swap(amps[b], amps[b | bt]);
}

Complex sandwich_2q(const std::vector<Complex>& bra,
                    const std::vector<Complex>& ket, int n, int qa, int qb,
                    const Matrix4cd& u) {
  const std::uint64_t ba = 1ull << (n - 1 - qa);
  const std::uint64_t bb = 1ull << (n - 1 - qb);
  const std::uint64_t dim = std::uint64_t{1} << n;
  Complex acc{0, 0};
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & (ba | bb)) continue;
    const std::uint64_t idx[4] = {b, b | bb, b | ba, b | ba | bb};
    for (int r = 0; r < 4; ++r) {
      Complex row{0, 0};
      for (int c = 0; c < 4; ++c) row += u(r, c) * ket[idx[c]];
      acc += std::conj(bra[idx[r]]) * row;
    }
  }
  return acc;
}

Complex sandwich_1q(const std::vector<Complex>& bra,
                    const std::vector<Complex>& ket, int n, int q,
                    const Matrix2cd& u) {
  const std::uint64_t bit = 1ull << (n - 1 - q);
  const std::uint64_t dim = std::uint64_t{1} << n;
  Complex acc{0, 0};
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const Complex k0 = ket[b], k1 = ket[b | bit];
    acc += std::conj(bra[b]) * (u(0, 0) * k0 + u(0, 1) * k1);
    acc += std::conj(bra[b | bit]) * (u(1, 0) * k0 + u(1, 1) * k1);
  }
  return acc;
}

// Magic basis: columns are the Bell-like states whose conjugation maps
// SU(2) x SU(2) onto SO(4).
Matrix4cd magic_basis() {
  Matrix4cd m;
  const double r = 1.0 / std::sqrt(2.0);
  m << Complex{r, 0}, Complex{0, r}, Complex{0, 0}, Complex{0, 0},
       Complex{0, 0}, Complex{0, 0}, Complex{0, r}, Complex{r, 0},
       Complex{0, 0}, Complex{0, 0}, Complex{0, r}, Complex{-r, 0},
       Complex{r, 0}, Complex{0, -r}, Complex{0, 0}, Complex{0, 0};
  return m;
}

Matrix2cd su2_euler(double alpha, double theta, double beta) {
  return rz_matrix(alpha) * ry_matrix(theta) * rz_matrix(beta);
}

}  // namespace

DenseState DenseState::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

DenseState DenseState::basis_state(int n_qubits, std::uint64_t index) {
  DenseState s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, Complex{0, 0});
  s.amplitudes.at(index) = Complex{1, 0};
  return s;
}

double DenseState::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

void AnsatzCircuit::validate() const {
  std::vector<bool> used(static_cast<std::size_t>(n_params), false);
  for (const auto& g : gates) {
    if (g.q0 < 0 || g.q0 >= n_qubits ||
        (g.kind == GateKind::CNOT || g.kind == GateKind::SO4
             ? (g.q1 < 0 || g.q1 >= n_qubits || g.q1 == g.q0)
             : false))
      throw std::invalid_argument("circuit gate qubit out of range");
    for (int s = 0; s < g.n_slots(); ++s) {
      const int slot = g.param_slot + s;
      if (slot < 0 || slot >= n_params)
        throw std::invalid_argument("circuit parameter slot out of range");
      used[static_cast<std::size_t>(slot)] = true;
    }
  }
  for (bool u : used)
    if (!u) throw std::invalid_argument("unused parameter slot");
}

Eigen::Matrix4d so4_unitary(std::span<const double, 6> p) {
  static const Matrix4cd m = magic_basis();
  static const Matrix4cd md = magic_basis().adjoint();
  const Matrix2cd a = su2_euler(p[0], p[1], p[2]);
  const Matrix2cd b = su2_euler(p[3], p[4], p[5]);
  Matrix4cd ab = Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ab.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return (md * ab * m).real();
}

void so4_unitary_with_derivs(std::span<const double, 6> p, Eigen::Matrix4d& u,
                             std::array<Eigen::Matrix4d, 6>& du) {
  static const Matrix4cd m = magic_basis();
  static const Matrix4cd md = magic_basis().adjoint();
  const Matrix2cd z = pauli_matrix(GateKind::RZ);
  const Matrix2cd y = pauli_matrix(GateKind::RY);
  const Complex f{0.0, -0.5};  // -i/2

  auto triple = [&](double alpha, double theta, double beta, Matrix2cd& g,
                    std::array<Matrix2cd, 3>& dg) {
    const Matrix2cd rza = rz_matrix(alpha), ryt = ry_matrix(theta),
                    rzb = rz_matrix(beta);
    g = rza * ryt * rzb;
    dg[0] = f * z * g;
    dg[1] = rza * (f * y * ryt) * rzb;
    dg[2] = g * (f * z);
  };

  Matrix2cd a, b;
  std::array<Matrix2cd, 3> da, db;
  triple(p[0], p[1], p[2], a, da);
  triple(p[3], p[4], p[5], b, db);

  auto conj_kron = [&](const Matrix2cd& l, const Matrix2cd& r) {
    Matrix4cd lr = Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) lr.block<2, 2>(2 * i, 2 * j) = l(i, j) * r;
    return (md * lr * m).eval();
  };

  u = conj_kron(a, b).real();
  for (int k = 0; k < 3; ++k) {
    du[static_cast<std::size_t>(k)] = conj_kron(da[static_cast<std::size_t>(k)], b).real();
    du[static_cast<std::size_t>(k + 3)] = conj_kron(a, db[static_cast<std::size_t>(k)]).real();
  }
}

namespace {

void apply_gate_impl(std::vector<Complex>& amps, int n, const Gate& gate,
                     std::span<const double> params, bool inverse) {
  switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: {
      const double theta = params[static_cast<std::size_t>(gate.param_slot)];
      apply_1q(amps, n, gate.q0,
               rotation_matrix(gate.kind, inverse ? -theta : theta));
      break;
    }
    case GateKind::CNOT:
      apply_cnot(amps, n, gate.q0, gate.q1);
      break;
    case GateKind::SO4: {
      const Eigen::Matrix4d u = so4_unitary(
          params.subspan(static_cast<std::size_t>(gate.param_slot)).first<6>());
      const Matrix4cd uc =
          (inverse ? u.transpose() : u).cast<Complex>();
      apply_2q(amps, n, gate.q0, gate.q1, uc);
      break;
    }
  }
}

}  // namespace

void apply_gate(DenseState& state, const Gate& gate,
                std::span<const double> params) {
  apply_gate_impl(state.amplitudes, state.n_qubits, gate, params, false);
}

DenseState run_circuit(const AnsatzCircuit& circuit,
                       std::span<const double> params,
                       const DenseState& initial) {
  if (static_cast<int>(params.size()) != circuit.n_params)
    throw std::invalid_argument("parameter vector length mismatch");
  if (initial.n_qubits != circuit.n_qubits)
    throw std::invalid_argument("initial state qubit count mismatch");
  DenseState state = initial;
  for (const auto& g : circuit.gates)
    apply_gate_impl(state.amplitudes, state.n_qubits, g, params, false);
  return state;
}

double expectation(const PauliHamiltonian& h, const DenseState& state) {
  if (h.n_qubits != state.n_qubits)
    throw std::invalid_argument("expectation: qubit count mismatch");
  return pauli_expectation(h, state.amplitudes);
}

double energy_and_gradient(const PauliHamiltonian& h,
                           const AnsatzCircuit& circuit,
                           std::span<const double> params,
                           const DenseState& initial,
                           std::span<double> grad_out) {
  if (static_cast<int>(grad_out.size()) != circuit.n_params)
    throw std::invalid_argument("gradient buffer length mismatch");
  DenseState phi = run_circuit(circuit, params, initial);
  const int n = circuit.n_qubits;
  const double energy = pauli_expectation(h, phi.amplitudes);
  std::vector<Complex> lambda = apply_hamiltonian(h, phi.amplitudes);
  std::fill(grad_out.begin(), grad_out.end(), 0.0);

  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    const Gate& g = *it;
    apply_gate_impl(phi.amplitudes, n, g, params, true);
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ: {
        const double theta = params[static_cast<std::size_t>(g.param_slot)];
        const Matrix2cd du = Complex{0.0, -0.5} *
                             pauli_matrix(g.kind) *
                             rotation_matrix(g.kind, theta);
        grad_out[static_cast<std::size_t>(g.param_slot)] +=
            2.0 * sandwich_1q(lambda, phi.amplitudes, n, g.q0, du).real();
        break;
      }
      case GateKind::SO4: {
        Eigen::Matrix4d u;
        std::array<Eigen::Matrix4d, 6> du;
        so4_unitary_with_derivs(
            params.subspan(static_cast<std::size_t>(g.param_slot)).first<6>(),
            u, du);
        for (int k = 0; k < 6; ++k)
          grad_out[static_cast<std::size_t>(g.param_slot + k)] +=
              2.0 * sandwich_2q(lambda, phi.amplitudes, n, g.q0, g.q1,
                                du[static_cast<std::size_t>(k)].cast<Complex>())
                        .real();
        break;
      }
      case GateKind::CNOT:
        break;
    }
    apply_gate_impl(lambda, n, g, params, true);
  }
  return energy;
}

std::vector<double> gradient(const PauliHamiltonian& h,
                             const AnsatzCircuit& circuit,
                             std::span<const double> params,
                             const DenseState& initial) {
  std::vector<double> grad(static_cast<std::size_t>(circuit.n_params), 0.0);
  energy_and_gradient(h, circuit, params, initial, grad);
  return grad;
}

}  // namespace mqida
