#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mqida/pauli.hpp"

namespace mqida {

/// Full amplitude vector. Qubit 0 is the most significant bit of the index.
struct DenseState {
  int n_qubits = 0;
  std::vector<Complex> amplitudes;

  static DenseState zero_state(int n_qubits);
  static DenseState basis_state(int n_qubits, std::uint64_t index);
  double norm() const;
  std::size_t dim() const { return amplitudes.size(); }
};

enum class GateKind : std::uint8_t { RX, RY, RZ, CNOT, SO4 };

/// One circuit element. Rotations use one parameter slot, SO4 uses six
/// consecutive slots starting at `param_slot`, CNOT uses none.
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;         // second qubit for CNOT (target) and SO4
  int param_slot = -1;  // first slot, -1 when non-parameterized

  int n_slots() const { return kind == GateKind::SO4 ? 6 : kind == GateKind::CNOT ? 0 : 1; }
};

/// Parameterized circuit with per-layer parameter slices.
struct AnsatzCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  /// gates[layer_gate_begin[l] .. layer_gate_begin[l+1]) form ansatz layer l.
  std::vector<int> layer_gate_begin;
  /// [first_slot, past_last_slot) of each ansatz layer's parameters.
  std::vector<std::pair<int, int>> layer_param_slices;
  int n_params = 0;

  int n_layers() const { return static_cast<int>(layer_param_slices.size()); }
  void validate() const;
};

/// General SO(4) two-qubit gate: magic-basis conjugation of A x B with
/// A = Rz(p0) Ry(p1) Rz(p2), B = Rz(p3) Ry(p4) Rz(p5). Real orthogonal with
/// det +1; identity at zero parameters.
Eigen::Matrix4d so4_unitary(std::span<const double, 6> params);

/// so4_unitary plus the six partial derivative matrices.
void so4_unitary_with_derivs(std::span<const double, 6> params,
                             Eigen::Matrix4d& u,
                             std::array<Eigen::Matrix4d, 6>& du);

void apply_gate(DenseState& state, const Gate& gate,
                std::span<const double> params);

DenseState run_circuit(const AnsatzCircuit& circuit,
                       std::span<const double> params,
                       const DenseState& initial);

double expectation(const PauliHamiltonian& h, const DenseState& state);

/// Exact gradient of expectation(h, run_circuit(circuit, params, initial))
/// via one forward and one reverse sweep; contributions of gates sharing a
/// slot accumulate.
std::vector<double> gradient(const PauliHamiltonian& h,
                             const AnsatzCircuit& circuit,
                             std::span<const double> params,
                             const DenseState& initial);

/// Energy and gradient in one pass.
double energy_and_gradient(const PauliHamiltonian& h,
                           const AnsatzCircuit& circuit,
                           std::span<const double> params,
                           const DenseState& initial,
                           std::span<double> grad_out);

}  // namespace mqida
