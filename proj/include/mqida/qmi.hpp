#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mqida/mps.hpp"
#include "mqida/statevector.hpp"

namespace mqida {

/// Von Neumann entropy in bits. Eigenvalues below `clip` are treated as
/// zero; the matrix must be Hermitian with unit trace to within 1e-6.
double von_neumann_entropy(const Eigen::MatrixXd& rho, double clip = 1e-12);

/// Symmetric mutual-information matrix with a zero diagonal.
struct QmiMatrix {
  int n_sites = 0;
  Eigen::MatrixXd values;

  double max_offdiag() const;
  /// Entries divided by the largest off-diagonal value.
  QmiMatrix normalized() const;
  std::string to_csv() const;
};

/// Pairwise one- and two-site density matrices from a dense state.
Eigen::Matrix2d dense_rdm_site(const DenseState& state, int i);
Eigen::Matrix4d dense_rdm_pair(const DenseState& state, int i, int j);

QmiMatrix qmi_matrix(const DenseState& state);
QmiMatrix qmi_matrix(const MpsState& state);

}  // namespace mqida
