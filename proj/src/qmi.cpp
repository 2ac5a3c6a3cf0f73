#include "mqida/qmi.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mqida {

double von_neumann_entropy(const Eigen::MatrixXd& rho, double clip) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("von_neumann_entropy: square matrix required");
  if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("von_neumann_entropy: matrix not symmetric");
  if (std::abs(rho.trace() - 1.0) > 1e-6)
    throw std::invalid_argument("von_neumann_entropy: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p < -1e-8)
      throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
    if (p > clip) s -= p * std::log2(p);
  }
  return s;
}

double QmiMatrix::max_offdiag() const {
  double m = 0.0;
  for (int i = 0; i < n_sites; ++i)
    for (int j = 0; j < n_sites; ++j)
      if (i != j) m = std::max(m, values(i, j));
  return m;
}

QmiMatrix QmiMatrix::normalized() const {
  const double m = max_offdiag();
  QmiMatrix out = *this;
  if (m > 0) out.values /= m;
  out.values.diagonal().setZero();
  return out;
}

std::string QmiMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  for (int i = 0; i < n_sites; ++i) {
    for (int j = 0; j < n_sites; ++j) {
      if (j) os << ',';
      os << values(i, j);
    }
    os << '\n';
  }
  return os.str();
}

Eigen::Matrix2d dense_rdm_site(const DenseState& state, int i) {
  const int n = state.n_qubits;
  const std::uint64_t bit = 1ull << (n - 1 - i);
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const int s = (b & bit) ? 1 : 0;
    for (int s2 = 0; s2 < 2; ++s2) {
      const std::uint64_t b2 = (b & ~bit) | (s2 ? bit : 0);
      rho(s, s2) += state.amplitudes[b] * std::conj(state.amplitudes[b2]);
    }
  }
  if (rho.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("dense_rdm_site: state must be real");
  return rho.real();
}

Eigen::Matrix4d dense_rdm_pair(const DenseState& state, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == j)
    throw std::invalid_argument("dense_rdm_pair: distinct sites required");
  const int n = state.n_qubits;
  const std::uint64_t bi = 1ull << (n - 1 - i);
  const std::uint64_t bj = 1ull << (n - 1 - j);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (std::uint64_t b = 0; b < state.dim(); ++b) {
    const int s = ((b & bi) ? 2 : 0) | ((b & bj) ? 1 : 0);
    const std::uint64_t base = b & ~(bi | bj);
    for (int s2 = 0; s2 < 4; ++s2) {
      const std::uint64_t b2 =
          base | ((s2 & 2) ? bi : 0) | ((s2 & 1) ? bj : 0);
      rho(s, s2) += state.amplitudes[b] * std::conj(state.amplitudes[b2]);
    }
  }
  if (rho.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("dense_rdm_pair: state must be real");
  return rho.real();
}

namespace {

template <typename SiteRdm, typename PairRdm>
QmiMatrix qmi_from_rdms(int n, SiteRdm site, PairRdm pair) {
  std::vector<double> s1(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    s1[static_cast<std::size_t>(i)] = von_neumann_entropy(site(i));
  QmiMatrix out;
  out.n_sites = n;
  out.values = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double sij = von_neumann_entropy(pair(i, j));
      const double v = std::max(0.0, s1[static_cast<std::size_t>(i)] +
                                         s1[static_cast<std::size_t>(j)] -
                                         sij);
      out.values(i, j) = out.values(j, i) = v;
    }
  return out;
}

}  // namespace

QmiMatrix qmi_matrix(const DenseState& state) {
  return qmi_from_rdms(
      state.n_qubits, [&](int i) { return dense_rdm_site(state, i); },
      [&](int i, int j) { return dense_rdm_pair(state, i, j); });
}

QmiMatrix qmi_matrix(const MpsState& state) {
  return qmi_from_rdms(
      state.n_sites, [&](int i) { return rdm_site(state, i); },
      [&](int i, int j) { return rdm_pair(state, i, j); });
}

}  // namespace mqida
