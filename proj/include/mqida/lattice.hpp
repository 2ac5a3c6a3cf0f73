#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mqida/pauli.hpp"

namespace mqida {

/// Open-boundary rectangular Heisenberg lattice. Site index = row * cols + col.
struct LatticeSpec {
  int rows = 1;
  int cols = 2;
  double coupling_j = 1.0;
  double field_h = 0.0;
  double anisotropy = 1.0;

  int n_sites() const { return rows * cols; }
  void validate() const;
  std::string label() const;
  /// Stable content hash, used as cache key for reference states.
  std::uint64_t canonical_hash() const;
};

/// All horizontal and vertical nearest-neighbor pairs (i < j).
std::vector<std::pair<int, int>> lattice_edges(const LatticeSpec& spec);

/// H = (J/4) sum_<ij> [D(XX + YY) + ZZ] - (h/2) sum_i Z_i.
PauliHamiltonian build_heisenberg(const LatticeSpec& spec);

/// Energy of the alternating up/down checkerboard product state under
/// build_heisenberg(spec).
double neel_energy(const LatticeSpec& spec);

/// Basis index of the Neel product state (bit set = spin down); the site
/// (0,0) is spin up.
std::uint64_t neel_state_index(const LatticeSpec& spec);

/// Staggered pinning field -(eps/2) sum_i (-1)^(r+c) Z_i, used to break the
/// near-degenerate ground manifold of strongly anisotropic systems before
/// computing mutual information.
PauliHamiltonian staggered_field(const LatticeSpec& spec, double eps);

}  // namespace mqida
