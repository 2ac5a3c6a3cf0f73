#pragma once

#include "mqida/pauli.hpp"
#include "mqida/statevector.hpp"

namespace mqida {

struct ExactResult {
  double energy = 0.0;
  DenseState state;
  double residual = 0.0;
};

/// Lowest eigenpair of the Hamiltonian. Magnetization-conserving operators
/// are solved sector by sector (ties resolved toward the larger total Z);
/// otherwise a full-space Lanczos runs. The eigenvector sign is fixed by
/// making its largest-magnitude amplitude real positive.
ExactResult exact_ground_state(const PauliHamiltonian& h, int max_qubits = 14);

}  // namespace mqida
