#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mqida/pauli.hpp"
#include "mqida/statevector.hpp"

namespace mqida {

/// Open-boundary matrix product state with real tensors. Site tensor i holds
/// one left×right matrix per physical index s in {0 (up), 1 (down)}.
struct MpsState {
  int n_sites = 0;
  /// tensors[i][s] has shape (chi_left, chi_right).
  std::vector<std::array<Eigen::MatrixXd, 2>> tensors;

  int bond_dim() const;
  double norm() const;
  void normalize();
};

/// MPO in sparse per-bond form: for site i, ops[i] is a list of
/// (left_channel, right_channel, 2x2 operator) entries. Channel 0 is the
/// "done" state, the last channel is the "not started" state.
struct MpoOperator {
  int n_sites = 0;
  struct Entry {
    int l = 0, r = 0;
    Eigen::Matrix2d op;
  };
  std::vector<std::vector<Entry>> ops;
  std::vector<int> bond_dims;  // n_sites + 1 entries
};

/// Finite-state-machine MPO for a real-matrix Pauli sum. Y operators are
/// folded in pairs as iY (real); terms with an odd Y count are rejected.
MpoOperator build_mpo(const PauliHamiltonian& h);

struct DmrgOptions {
  int max_bond = 64;
  int sweeps = 12;
  double svd_cutoff = 1e-12;
  double energy_tol = 1e-10;
  std::uint64_t seed = 7;
  int init_bond = 8;
};

struct DmrgResult {
  double energy = 0.0;
  MpsState state;
  int sweeps_used = 0;
  double last_sweep_delta = 0.0;
};

/// Two-site DMRG ground-state search.
DmrgResult dmrg_ground_state(const PauliHamiltonian& h,
                             const DmrgOptions& opts = {});

DenseState mps_to_dense(const MpsState& mps);
MpsState mps_from_dense(const DenseState& state, int max_bond = 256,
                        double cutoff = 1e-14);

/// Two-site reduced density matrix for sites i < j via transfer matrices.
/// Row/column index is (s_i, s_j) with s_i more significant.
Eigen::Matrix4d rdm_pair(const MpsState& mps, int i, int j);

/// Single-site reduced density matrix.
Eigen::Matrix2d rdm_site(const MpsState& mps, int i);

/// Project onto the dominant total-magnetization sector and renormalize
/// (dense round trip; requires n_sites small enough for a full vector).
MpsState project_to_dominant_magnetization(const MpsState& mps,
                                           int max_bond = 256);

double mps_energy(const PauliHamiltonian& h, const MpsState& mps);

}  // namespace mqida
