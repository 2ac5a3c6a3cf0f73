#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mqida {

using Complex = std::complex<double>;

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);

/// One weighted Pauli string over n qubits. `ops` has one entry per qubit,
/// qubit 0 first.
struct PauliString {
  double coefficient = 0.0;
  std::vector<PauliOp> ops;

  int weight() const;
  std::string label() const;
};

/// Hermitian operator as a sum of real-weighted Pauli strings.
struct PauliHamiltonian {
  int n_qubits = 0;
  std::vector<PauliString> terms;

  /// Adds a term given as sparse (qubit, op) pairs; identity elsewhere.
  void add_term(double coefficient,
                const std::vector<std::pair<int, PauliOp>>& ops);

  /// Merges duplicate strings by summing coefficients and drops zeros.
  void merge_duplicates(double drop_tol = 0.0);
};

/// y += P|x> including the string coefficient. Qubit 0 is the most
/// significant bit of the amplitude index.
void apply_pauli_string(const PauliString& term, int n_qubits,
                        std::span<const Complex> x, std::span<Complex> y);

std::vector<Complex> apply_hamiltonian(const PauliHamiltonian& h,
                                       std::span<const Complex> x);

/// <x|H|x> for a normalized amplitude vector.
double pauli_expectation(const PauliHamiltonian& h, std::span<const Complex> x);

/// True when H commutes with the total-Z magnetization operator, checked
/// symbolically on the Pauli algebra.
bool conserves_magnetization(const PauliHamiltonian& h);

}  // namespace mqida
