#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqida/bfgs.hpp"
#include "mqida/pauli.hpp"
#include "mqida/statevector.hpp"

namespace mqida {

struct VqeOptions {
  BfgsOptions bfgs;
  /// Basis state the circuit starts from (qubit 0 = MSB).
  std::uint64_t initial_basis_state = 0;
};

struct TrajectoryPoint {
  int iteration = 0;  // global across the whole run
  double energy = 0.0;
  std::string phase;  // e.g. "layer2:new", "layer2:relax", "full"
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> params;
  /// Energy after each completed optimization stage (one per ansatz layer
  /// for the iterative scheme, one entry for single-shot runs).
  std::vector<double> stage_energies;
  std::vector<TrajectoryPoint> trajectory;
  int iterations = 0;
  int n_evals = 0;
  bool converged = false;
};

/// Derive the k-th stream seed from a base seed (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

/// Uniform [0, 2*pi) initial parameters for the given seed.
std::vector<double> random_params(int n, std::uint64_t seed);

/// Single-shot VQE over all parameters at once.
VqeResult vqe(const PauliHamiltonian& h, const AnsatzCircuit& circuit,
              const std::vector<double>& initial_params,
              const VqeOptions& opts = {});

/// Layer-by-layer VQE. The first layer starts from uniform random
/// parameters; each subsequent layer is appended at zero, optimized alone
/// with earlier parameters frozen, then all parameters are relaxed together.
VqeResult iterative_layered_vqe(const PauliHamiltonian& h,
                                const AnsatzCircuit& circuit,
                                std::uint64_t seed,
                                const VqeOptions& opts = {});

struct VqeRunRecord {
  std::string system;
  std::string ansatz;
  std::uint64_t seed = 0;
  double energy = 0.0;
  double exact_energy = 0.0;
  double neel_energy = 0.0;
  int iterations = 0;
  int n_evals = 0;
  bool converged = false;
  double wall_seconds = 0.0;
  std::vector<double> stage_energies;

  std::string to_jsonl() const;
  static VqeRunRecord from_jsonl(const std::string& line);
};

}  // namespace mqida
