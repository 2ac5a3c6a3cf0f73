#include "mqida/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mqida {

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  return '?';
}

int PauliString::weight() const {
  int w = 0;
  for (auto op : ops)
    if (op != PauliOp::I) ++w;
  return w;
}

std::string PauliString::label() const {
  std::string s;
  s.reserve(ops.size());
  for (auto op : ops) s.push_back(pauli_char(op));
  return s;
}

void PauliHamiltonian::add_term(
    double coefficient, const std::vector<std::pair<int, PauliOp>>& ops) {
  PauliString term;
  term.coefficient = coefficient;
  term.ops.assign(static_cast<std::size_t>(n_qubits), PauliOp::I);
  for (const auto& [q, op] : ops) {
    if (q < 0 || q >= n_qubits)
      throw std::out_of_range("pauli term qubit index out of range");
    term.ops[static_cast<std::size_t>(q)] = op;
  }
  terms.push_back(std::move(term));
}

void PauliHamiltonian::merge_duplicates(double drop_tol) {
  std::map<std::string, double> merged;
  for (const auto& t : terms) merged[t.label()] += t.coefficient;
  std::vector<PauliString> out;
  out.reserve(merged.size());
  for (const auto& [label, coeff] : merged) {
    if (std::abs(coeff) <= drop_tol) continue;
    PauliString t;
    t.coefficient = coeff;
    t.ops.reserve(label.size());
    for (char c : label) {
      switch (c) {
        case 'I': t.ops.push_back(PauliOp::I); break;
        case 'X': t.ops.push_back(PauliOp::X); break;
        case 'Y': t.ops.push_back(PauliOp::Y); break;
        default:  t.ops.push_back(PauliOp::Z); break;
      }
    }
    out.push_back(std::move(t));
  }
  terms = std::move(out);
}

namespace {

struct StringMasks {
  std::uint64_t flip = 0;   // X and Y sites
  std::uint64_t phase = 0;  // Y and Z sites pick up (-1)^bit
  Complex prefactor{1.0, 0.0};
};

StringMasks make_masks(const PauliString& term, int n_qubits) {
  StringMasks m;
  int n_y = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const std::uint64_t bit = 1ull << (n_qubits - 1 - q);
    switch (term.ops[static_cast<std::size_t>(q)]) {
      case PauliOp::I: break;
      case PauliOp::X: m.flip |= bit; break;
      case PauliOp::Y: m.flip |= bit; m.phase |= bit; ++n_y; break;
      case PauliOp::Z: m.phase |= bit; break;
    }
  }
  static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  m.prefactor = term.coefficient * i_pow[n_y % 4];
  return m;
}

}  // namespace

void apply_pauli_string(const PauliString& term, int n_qubits,
                        std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (x.size() != dim || y.size() != dim)
    throw std::invalid_argument("apply_pauli_string: dimension mismatch");
  const StringMasks m = make_masks(term, n_qubits);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
    y[b ^ m.flip] += m.prefactor * sign * x[b];
  }
}

std::vector<Complex> apply_hamiltonian(const PauliHamiltonian& h,
                                       std::span<const Complex> x) {
  std::vector<Complex> y(x.size(), Complex{0.0, 0.0});
  for (const auto& term : h.terms) apply_pauli_string(term, h.n_qubits, x, y);
  return y;
}

double pauli_expectation(const PauliHamiltonian& h,
                         std::span<const Complex> x) {
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  if (x.size() != dim)
    throw std::invalid_argument("pauli_expectation: dimension mismatch");
  double acc = 0.0;
  for (const auto& term : h.terms) {
    const StringMasks m = make_masks(term, h.n_qubits);
    Complex e{0.0, 0.0};
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
      e += std::conj(x[b ^ m.flip]) * (m.prefactor * sign) * x[b];
    }
    acc += e.real();
  }
  return acc;
}

namespace {

// Product of two single-qubit Paulis: (phase, op) with a*b = phase * op.
std::pair<Complex, PauliOp> pauli_mul(PauliOp a, PauliOp b) {
  if (a == PauliOp::I) return {Complex{1, 0}, b};
  if (b == PauliOp::I) return {Complex{1, 0}, a};
  if (a == b) return {Complex{1, 0}, PauliOp::I};
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // XY=iZ, YZ=iX, ZX=iY; reversed order flips the sign.
  const PauliOp c = static_cast<PauliOp>(6 - ia - ib);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? Complex{0, 1} : Complex{0, -1}, c};
}

}  // namespace

bool conserves_magnetization(const PauliHamiltonian& h) {
  // [H, sum_q Z_q] expanded term by term; all strings must cancel.
  std::map<std::string, Complex> comm;
  for (const auto& term : h.terms) {
    for (int q = 0; q < h.n_qubits; ++q) {
      const PauliOp op = term.ops[static_cast<std::size_t>(q)];
      if (op != PauliOp::X && op != PauliOp::Y) continue;
      auto [ph_pz, op_pz] = pauli_mul(op, PauliOp::Z);
      auto [ph_zp, op_zp] = pauli_mul(PauliOp::Z, op);
      PauliString s = term;
      s.ops[static_cast<std::size_t>(q)] = op_pz;
      comm[s.label()] += term.coefficient * (ph_pz - ph_zp);
    }
  }
  for (const auto& [label, coeff] : comm)
    if (std::abs(coeff) > 1e-12) return false;
  return true;
}

}  // namespace mqida
