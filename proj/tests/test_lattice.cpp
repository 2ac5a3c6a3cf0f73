#include <doctest.h>

#include "mqida/exact.hpp"
#include "mqida/lattice.hpp"

using namespace mqida;

TEST_CASE("edge enumeration") {
  CHECK(lattice_edges(LatticeSpec{3, 3}).size() == 12);
  CHECK(lattice_edges(LatticeSpec{3, 4}).size() == 17);
  CHECK(lattice_edges(LatticeSpec{2, 6}).size() == 16);
  CHECK(lattice_edges(LatticeSpec{1, 5}).size() == 4);
  // Row-major, i < j, sorted.
  const auto e = lattice_edges(LatticeSpec{2, 2});
  const std::vector<std::pair<int, int>> want{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(e == want);
}

TEST_CASE("Neel energies match the closed form") {
  CHECK(neel_energy(LatticeSpec{3, 3}) == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(neel_energy(LatticeSpec{2, 6}) == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(neel_energy(LatticeSpec{3, 4}) ==
        doctest::Approx(-4.25).epsilon(1e-15));
  // Anisotropy does not touch the ZZ part.
  const LatticeSpec aniso{3, 4, 1.0, 0.0, 0.1};
  CHECK(neel_energy(aniso) == doctest::Approx(-4.25));
  // Balanced checkerboard: field term cancels.
  const LatticeSpec field{3, 4, 1.0, 2.0, 1.0};
  CHECK(neel_energy(field) == doctest::Approx(-4.25));
}

TEST_CASE("Neel energy equals the expectation in the Neel basis state") {
  for (const LatticeSpec spec :
       {LatticeSpec{2, 3}, LatticeSpec{3, 3}, LatticeSpec{2, 2, 1.0, 2.0},
        LatticeSpec{2, 4, 1.0, 0.5, 0.3}}) {
    const PauliHamiltonian h = build_heisenberg(spec);
    const DenseState neel =
        DenseState::basis_state(spec.n_sites(), neel_state_index(spec));
    CHECK(pauli_expectation(h, neel.amplitudes) ==
          doctest::Approx(neel_energy(spec)).epsilon(1e-12));
  }
}

TEST_CASE("Hamiltonian structure") {
  const PauliHamiltonian h = build_heisenberg({3, 4});
  CHECK(h.n_qubits == 12);
  CHECK(h.terms.size() == 3 * 17);  // XX, YY, ZZ per edge; h = 0
  const PauliHamiltonian hf = build_heisenberg({3, 4, 1.0, 2.0});
  CHECK(hf.terms.size() == 3 * 17 + 12);
  CHECK(conserves_magnetization(h));
  CHECK(conserves_magnetization(hf));
}

TEST_CASE("staggered pinning keeps the magnetization symmetry") {
  const LatticeSpec spec{2, 3};
  PauliHamiltonian h = build_heisenberg(spec);
  const PauliHamiltonian pin = staggered_field(spec, 1e-3);
  h.terms.insert(h.terms.end(), pin.terms.begin(), pin.terms.end());
  CHECK(conserves_magnetization(h));
  // Pinning lowers the Neel state's energy.
  const DenseState neel =
      DenseState::basis_state(spec.n_sites(), neel_state_index(spec));
  CHECK(pauli_expectation(pin, neel.amplitudes) < 0.0);
}

TEST_CASE("spec validation and labels") {
  CHECK_THROWS_AS((LatticeSpec{0, 4}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((LatticeSpec{1, 1}).validate(), std::invalid_argument);
  const LatticeSpec a{3, 4};
  const LatticeSpec b{3, 4, 1.0, 2.0};
  CHECK(a.label() == "3x4");
  CHECK(a.canonical_hash() != b.canonical_hash());
  CHECK(a.canonical_hash() == LatticeSpec(a).canonical_hash());
}
