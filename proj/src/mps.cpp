#include "mqida/mps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace mqida {

namespace {

const Eigen::Matrix2d kId = Eigen::Matrix2d::Identity();

Eigen::Matrix2d local_matrix(PauliOp op) {
  Eigen::Matrix2d m;
  switch (op) {
    case PauliOp::I: m = kId; break;
    case PauliOp::X: m << 0, 1, 1, 0; break;
    case PauliOp::Y: m << 0, 1, -1, 0; break;  // iY, real
    case PauliOp::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Left transfer step for <psi|psi>: E' = sum_s A[s]^T E A[s].
Eigen::MatrixXd transfer_left(const Eigen::MatrixXd& e,
                              const std::array<Eigen::MatrixXd, 2>& a) {
  return a[0].transpose() * e * a[0] + a[1].transpose() * e * a[1];
}

Eigen::MatrixXd transfer_right(const Eigen::MatrixXd& e,
                               const std::array<Eigen::MatrixXd, 2>& a) {
  return a[0] * e * a[0].transpose() + a[1] * e * a[1].transpose();
}

// Environment per MPO channel.
using Env = std::vector<Eigen::MatrixXd>;

Env env_left_step(const Env& l, const std::vector<MpoOperator::Entry>& w,
                  const std::array<Eigen::MatrixXd, 2>& a, int right_dim) {
  const Eigen::Index dr = a[0].cols();
  Env out(static_cast<std::size_t>(right_dim),
          Eigen::MatrixXd::Zero(dr, dr));
  for (const auto& e : w) {
    const Eigen::MatrixXd& ll = l[static_cast<std::size_t>(e.l)];
    if (ll.size() == 0) continue;
    for (int sb = 0; sb < 2; ++sb)
      for (int sk = 0; sk < 2; ++sk) {
        const double c = e.op(sb, sk);
        if (c == 0.0) continue;
        out[static_cast<std::size_t>(e.r)].noalias() +=
            c * (a[static_cast<std::size_t>(sb)].transpose() * ll *
                 a[static_cast<std::size_t>(sk)]);
      }
  }
  return out;
}

Env env_right_step(const Env& r, const std::vector<MpoOperator::Entry>& w,
                   const std::array<Eigen::MatrixXd, 2>& a, int left_dim) {
  const Eigen::Index dl = a[0].rows();
  Env out(static_cast<std::size_t>(left_dim), Eigen::MatrixXd::Zero(dl, dl));
  for (const auto& e : w) {
    const Eigen::MatrixXd& rr = r[static_cast<std::size_t>(e.r)];
    if (rr.size() == 0) continue;
    for (int sb = 0; sb < 2; ++sb)
      for (int sk = 0; sk < 2; ++sk) {
        const double c = e.op(sb, sk);
        if (c == 0.0) continue;
        out[static_cast<std::size_t>(e.l)].noalias() +=
            c * (a[static_cast<std::size_t>(sb)] * rr *
                 a[static_cast<std::size_t>(sk)].transpose());
      }
  }
  return out;
}

// Two-site block: 4 matrices (Dl x Dr) indexed by si*2+sj.
using Block = std::array<Eigen::MatrixXd, 4>;

Block apply_two_site(const Env& l, const std::vector<MpoOperator::Entry>& wi,
                     const std::vector<MpoOperator::Entry>& wj, const Env& r,
                     int mid_dim, const Block& t) {
  const Eigen::Index dl = t[0].rows(), dr = t[0].cols();
  // mid[m][si_bra*2 + sj_ket]
  std::vector<Block> mid(static_cast<std::size_t>(mid_dim));
  std::vector<bool> mid_set(static_cast<std::size_t>(mid_dim), false);
  for (const auto& e : wi) {
    const Eigen::MatrixXd& ll = l[static_cast<std::size_t>(e.l)];
    if (ll.size() == 0) continue;
    auto& dst = mid[static_cast<std::size_t>(e.r)];
    if (!mid_set[static_cast<std::size_t>(e.r)]) {
      for (auto& m : dst) m = Eigen::MatrixXd::Zero(dl, dr);
      mid_set[static_cast<std::size_t>(e.r)] = true;
    }
    for (int sb = 0; sb < 2; ++sb)
      for (int sk = 0; sk < 2; ++sk) {
        const double c = e.op(sb, sk);
        if (c == 0.0) continue;
        for (int sj = 0; sj < 2; ++sj)
          dst[static_cast<std::size_t>(sb * 2 + sj)].noalias() +=
              c * (ll * t[static_cast<std::size_t>(sk * 2 + sj)]);
      }
  }
  Block out;
  for (auto& m : out) m = Eigen::MatrixXd::Zero(dl, dr);
  for (const auto& e : wj) {
    if (!mid_set[static_cast<std::size_t>(e.l)]) continue;
    const Eigen::MatrixXd& rr = r[static_cast<std::size_t>(e.r)];
    if (rr.size() == 0) continue;
    const auto& src = mid[static_cast<std::size_t>(e.l)];
    for (int sb = 0; sb < 2; ++sb)
      for (int sk = 0; sk < 2; ++sk) {
        const double c = e.op(sb, sk);
        if (c == 0.0) continue;
        for (int si = 0; si < 2; ++si)
          out[static_cast<std::size_t>(si * 2 + sb)].noalias() +=
              c * (src[static_cast<std::size_t>(si * 2 + sk)] *
                   rr.transpose());
      }
  }
  return out;
}

Eigen::VectorXd block_to_vec(const Block& b) {
  const Eigen::Index dl = b[0].rows(), dr = b[0].cols();
  Eigen::VectorXd v(4 * dl * dr);
  Eigen::Index k = 0;
  for (const auto& m : b)
    for (Eigen::Index i = 0; i < dl; ++i)
      for (Eigen::Index j = 0; j < dr; ++j) v[k++] = m(i, j);
  return v;
}

Block vec_to_block(const Eigen::VectorXd& v, Eigen::Index dl,
                   Eigen::Index dr) {
  Block b;
  Eigen::Index k = 0;
  for (auto& m : b) {
    m.resize(dl, dr);
    for (Eigen::Index i = 0; i < dl; ++i)
      for (Eigen::Index j = 0; j < dr; ++j) m(i, j) = v[k++];
  }
  return b;
}

// Warm-started Lanczos on the two-site effective Hamiltonian.
double local_ground(const Env& l, const std::vector<MpoOperator::Entry>& wi,
                    const std::vector<MpoOperator::Entry>& wj, const Env& r,
                    int mid_dim, Block& t) {
  const Eigen::Index dl = t[0].rows(), dr = t[0].cols();
  Eigen::VectorXd v0 = block_to_vec(t);
  const double n0 = v0.norm();
  if (n0 < 1e-14) v0.setOnes();
  v0.normalize();
  const Eigen::Index dim = v0.size();

  auto apply = [&](const Eigen::VectorXd& x) {
    return block_to_vec(
        apply_two_site(l, wi, wj, r, mid_dim, vec_to_block(x, dl, dr)));
  };

  double eval = 0.0;
  for (int restart = 0; restart < 4; ++restart) {
    std::vector<Eigen::VectorXd> basis{v0};
    std::vector<double> alpha, beta;
    const int m_max = static_cast<int>(std::min<Eigen::Index>(40, dim));
    for (int m = 0; m < m_max; ++m) {
      Eigen::VectorXd w = apply(basis.back());
      alpha.push_back(basis.back().dot(w));
      for (const auto& b : basis) w -= b.dot(w) * b;
      for (const auto& b : basis) w -= b.dot(w) * b;
      const double nw = w.norm();
      if (nw < 1e-12 || m + 1 == m_max) break;
      beta.push_back(nw);
      basis.push_back(w / nw);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m)
        tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < m; ++i)
      v += es.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
    v.normalize();
    Eigen::VectorXd hv = apply(v);
    eval = v.dot(hv);
    v0 = v;
    if ((hv - eval * v).norm() < 1e-9) break;
  }
  t = vec_to_block(v0, dl, dr);
  return eval;
}

struct SplitResult {
  std::array<Eigen::MatrixXd, 2> left;   // Dl x chi
  std::array<Eigen::MatrixXd, 2> right;  // chi x Dr
};

// SVD split of a two-site block; singular values go left or right.
SplitResult split_block(const Block& t, int max_bond, double cutoff,
                        bool values_right) {
  const Eigen::Index dl = t[0].rows(), dr = t[0].cols();
  Eigen::MatrixXd theta(2 * dl, 2 * dr);
  for (int si = 0; si < 2; ++si)
    for (int sj = 0; sj < 2; ++sj)
      theta.block(si * dl, sj * dr, dl, dr) =
          t[static_cast<std::size_t>(si * 2 + sj)];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff * std::max(smax, 1e-300)) ++keep;
  keep = std::max<Eigen::Index>(1, std::min<Eigen::Index>(keep, max_bond));

  Eigen::MatrixXd u = svd.matrixU().leftCols(keep);
  Eigen::MatrixXd vt = svd.matrixV().leftCols(keep).transpose();
  const Eigen::VectorXd sv = s.head(keep);
  if (values_right)
    vt = sv.asDiagonal() * vt;
  else
    u = u * sv.asDiagonal();

  SplitResult out;
  for (int si = 0; si < 2; ++si)
    out.left[static_cast<std::size_t>(si)] = u.middleRows(si * dl, dl);
  for (int sj = 0; sj < 2; ++sj)
    out.right[static_cast<std::size_t>(sj)] = vt.middleCols(sj * dr, dr);
  return out;
}

}  // namespace

int MpsState::bond_dim() const {
  Eigen::Index chi = 1;
  for (const auto& t : tensors) chi = std::max(chi, t[0].cols());
  return static_cast<int>(chi);
}

double MpsState::norm() const {
  Eigen::MatrixXd e = Eigen::MatrixXd::Ones(1, 1);
  for (const auto& t : tensors) e = transfer_left(e, t);
  return std::sqrt(std::max(0.0, e(0, 0)));
}

void MpsState::normalize() {
  const double n = norm();
  if (n <= 0) throw std::runtime_error("MpsState::normalize: zero norm");
  const double f = std::pow(n, -1.0 / n_sites);
  for (auto& t : tensors) {
    t[0] *= f;
    t[1] *= f;
  }
}

MpoOperator build_mpo(const PauliHamiltonian& h) {
  const int n = h.n_qubits;
  MpoOperator mpo;
  mpo.n_sites = n;
  mpo.ops.resize(static_cast<std::size_t>(n));
  // Interior bond channels: 0 = done, 1 = pending, 2.. term-specific.
  std::vector<int> dims(static_cast<std::size_t>(n) + 1, 2);
  dims.front() = 1;  // pending only
  dims.back() = 1;   // done only
  auto pend = [&](int b) { return b == 0 ? 0 : 1; };
  auto done = [](int) { return 0; };

  for (int i = 0; i < n; ++i) {
    if (i > 0) mpo.ops[static_cast<std::size_t>(i)].push_back(
        {done(i), done(i + 1), kId});
    if (i < n - 1) mpo.ops[static_cast<std::size_t>(i)].push_back(
        {pend(i), pend(i + 1), kId});
  }

  for (const auto& term : h.terms) {
    std::vector<int> sites;
    int n_y = 0;
    for (int q = 0; q < n; ++q) {
      const PauliOp op = term.ops[static_cast<std::size_t>(q)];
      if (op != PauliOp::I) sites.push_back(q);
      if (op == PauliOp::Y) ++n_y;
    }
    if (n_y % 2 != 0)
      throw std::invalid_argument(
          "build_mpo: odd-Y Pauli strings give a complex matrix in the real "
          "working basis");
    double coeff = (n_y % 4 == 2) ? -term.coefficient : term.coefficient;

    if (sites.empty()) {
      mpo.ops[0].push_back({pend(0), done(1), coeff * kId});
      continue;
    }
    const int first = sites.front(), last = sites.back();
    if (first == last) {
      mpo.ops[static_cast<std::size_t>(first)].push_back(
          {pend(first), done(first + 1),
           coeff * local_matrix(term.ops[static_cast<std::size_t>(first)])});
      continue;
    }
    // Allocate a fresh channel on every bond strictly inside the term span.
    std::vector<int> chan(static_cast<std::size_t>(n) + 1, -1);
    for (int b = first + 1; b <= last; ++b)
      chan[static_cast<std::size_t>(b)] = dims[static_cast<std::size_t>(b)]++;
    std::size_t next_support = 0;
    for (int i = first; i <= last; ++i) {
      const bool on = next_support < sites.size() &&
                      sites[next_support] == i;
      Eigen::Matrix2d op = on ? local_matrix(
                                    term.ops[static_cast<std::size_t>(i)])
                              : kId;
      if (on) ++next_support;
      const int lch = i == first ? pend(i) : chan[static_cast<std::size_t>(i)];
      const int rch =
          i == last ? done(i + 1) : chan[static_cast<std::size_t>(i) + 1];
      if (i == first) op *= coeff;
      mpo.ops[static_cast<std::size_t>(i)].push_back({lch, rch, op});
    }
  }
  mpo.bond_dims = dims;
  return mpo;
}

DmrgResult dmrg_ground_state(const PauliHamiltonian& h,
                             const DmrgOptions& opts) {
  const int n = h.n_qubits;
  if (n < 2) throw std::invalid_argument("dmrg_ground_state: need >= 2 sites");
  MpoOperator mpo = build_mpo(h);

  // Random right-canonical start with capped bond dimensions.
  MpsState mps;
  mps.n_sites = n;
  mps.tensors.resize(static_cast<std::size_t>(n));
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  std::vector<Eigen::Index> chi(static_cast<std::size_t>(n) + 1, 1);
  for (int b = 1; b < n; ++b) {
    const double cap_l = std::pow(2.0, std::min(b, 28));
    const double cap_r = std::pow(2.0, std::min(n - b, 28));
    chi[static_cast<std::size_t>(b)] = static_cast<Eigen::Index>(
        std::min({static_cast<double>(std::min(opts.init_bond, opts.max_bond)),
                  cap_l, cap_r}));
  }
  for (int i = 0; i < n; ++i) {
    auto& t = mps.tensors[static_cast<std::size_t>(i)];
    for (int s = 0; s < 2; ++s) {
      t[static_cast<std::size_t>(s)].resize(chi[static_cast<std::size_t>(i)],
                                            chi[static_cast<std::size_t>(i) + 1]);
      for (Eigen::Index a = 0; a < t[static_cast<std::size_t>(s)].rows(); ++a)
        for (Eigen::Index b = 0; b < t[static_cast<std::size_t>(s)].cols(); ++b)
          t[static_cast<std::size_t>(s)](a, b) = gauss(rng);
    }
  }
  // Right-canonicalize by sweeping splits right to left.
  for (int i = n - 1; i > 0; --i) {
    auto& tl = mps.tensors[static_cast<std::size_t>(i - 1)];
    auto& tr = mps.tensors[static_cast<std::size_t>(i)];
    Block blk;
    for (int si = 0; si < 2; ++si)
      for (int sj = 0; sj < 2; ++sj)
        blk[static_cast<std::size_t>(si * 2 + sj)] =
            tl[static_cast<std::size_t>(si)] * tr[static_cast<std::size_t>(sj)];
    SplitResult sp = split_block(blk, opts.max_bond, opts.svd_cutoff, false);
    tl = sp.left;
    tr = sp.right;
  }
  {
    const double n0 = mps.norm();
    mps.tensors[0][0] /= n0;
    mps.tensors[0][1] /= n0;
  }

  // Environments: left[i] is the env at the bond left of site i,
  // right[i] the env at the bond right of site i.
  std::vector<Env> left(static_cast<std::size_t>(n)),
      right(static_cast<std::size_t>(n));
  left[0] = Env(1, Eigen::MatrixXd::Ones(1, 1));
  right[static_cast<std::size_t>(n) - 1] =
      Env(1, Eigen::MatrixXd::Ones(1, 1));
  for (int i = n - 1; i >= 2; --i)
    right[static_cast<std::size_t>(i) - 1] = env_right_step(
        right[static_cast<std::size_t>(i)],
        mpo.ops[static_cast<std::size_t>(i)],
        mps.tensors[static_cast<std::size_t>(i)],
        mpo.bond_dims[static_cast<std::size_t>(i)]);

  double energy = 0.0, prev = 0.0;
  int sweeps_used = 0;
  double delta = 0.0;
  for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
    // Left-to-right.
    for (int i = 0; i + 1 < n; ++i) {
      const int j = i + 1;
      Block blk;
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj)
          blk[static_cast<std::size_t>(si * 2 + sj)] =
              mps.tensors[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(si)] *
              mps.tensors[static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(sj)];
      energy = local_ground(left[static_cast<std::size_t>(i)],
                            mpo.ops[static_cast<std::size_t>(i)],
                            mpo.ops[static_cast<std::size_t>(j)],
                            right[static_cast<std::size_t>(j)],
                            mpo.bond_dims[static_cast<std::size_t>(j)], blk);
      SplitResult sp =
          split_block(blk, opts.max_bond, opts.svd_cutoff, true);
      mps.tensors[static_cast<std::size_t>(i)] = sp.left;
      mps.tensors[static_cast<std::size_t>(j)] = sp.right;
      if (j < n)
        left[static_cast<std::size_t>(j)] = env_left_step(
            left[static_cast<std::size_t>(i)],
            mpo.ops[static_cast<std::size_t>(i)],
            mps.tensors[static_cast<std::size_t>(i)],
            mpo.bond_dims[static_cast<std::size_t>(i) + 1]);
    }
    // Right-to-left.
    for (int j = n - 1; j >= 1; --j) {
      const int i = j - 1;
      Block blk;
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj)
          blk[static_cast<std::size_t>(si * 2 + sj)] =
              mps.tensors[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(si)] *
              mps.tensors[static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(sj)];
      energy = local_ground(left[static_cast<std::size_t>(i)],
                            mpo.ops[static_cast<std::size_t>(i)],
                            mpo.ops[static_cast<std::size_t>(j)],
                            right[static_cast<std::size_t>(j)],
                            mpo.bond_dims[static_cast<std::size_t>(j)], blk);
      SplitResult sp =
          split_block(blk, opts.max_bond, opts.svd_cutoff, false);
      mps.tensors[static_cast<std::size_t>(i)] = sp.left;
      mps.tensors[static_cast<std::size_t>(j)] = sp.right;
      right[static_cast<std::size_t>(i)] = env_right_step(
          right[static_cast<std::size_t>(j)],
          mpo.ops[static_cast<std::size_t>(j)],
          mps.tensors[static_cast<std::size_t>(j)],
          mpo.bond_dims[static_cast<std::size_t>(j)]);
    }
    sweeps_used = sweep + 1;
    delta = std::abs(energy - prev);
    if (sweep > 0 && delta < opts.energy_tol) break;
    prev = energy;
  }

  DmrgResult res;
  res.energy = energy;
  res.state = std::move(mps);
  res.state.normalize();
  res.sweeps_used = sweeps_used;
  res.last_sweep_delta = delta;
  return res;
}

DenseState mps_to_dense(const MpsState& mps) {
  const int n = mps.n_sites;
  if (n > 28) throw std::invalid_argument("mps_to_dense: too many sites");
  // Rows enumerate the physical indices contracted so far (site 0 most
  // significant, matching the qubit convention).
  Eigen::MatrixXd acc = Eigen::MatrixXd::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    const auto& t = mps.tensors[static_cast<std::size_t>(i)];
    Eigen::MatrixXd next(acc.rows() * 2, t[0].cols());
    for (int s = 0; s < 2; ++s) {
      Eigen::MatrixXd part = acc * t[static_cast<std::size_t>(s)];
      for (Eigen::Index r = 0; r < acc.rows(); ++r)
        next.row(2 * r + s) = part.row(r);
    }
    acc = std::move(next);
  }
  DenseState out;
  out.n_qubits = n;
  out.amplitudes.resize(static_cast<std::size_t>(acc.rows()));
  for (Eigen::Index r = 0; r < acc.rows(); ++r)
    out.amplitudes[static_cast<std::size_t>(r)] = Complex{acc(r, 0), 0.0};
  return out;
}

MpsState mps_from_dense(const DenseState& state, int max_bond,
                        double cutoff) {
  const int n = state.n_qubits;
  MpsState mps;
  mps.n_sites = n;
  mps.tensors.resize(static_cast<std::size_t>(n));
  Eigen::MatrixXd rest(1, static_cast<Eigen::Index>(state.dim()));
  for (std::size_t b = 0; b < state.dim(); ++b) {
    if (std::abs(state.amplitudes[b].imag()) > 1e-12)
      throw std::invalid_argument("mps_from_dense: state must be real");
    rest(0, static_cast<Eigen::Index>(b)) = state.amplitudes[b].real();
  }
  for (int i = 0; i < n; ++i) {
    const Eigen::Index chi_l = rest.rows();
    const Eigen::Index cols = rest.cols() / 2;
    // Group (chi_l, s_i) into rows, remaining physical indices into columns.
    Eigen::MatrixXd m(chi_l * 2, cols);
    for (Eigen::Index a = 0; a < chi_l; ++a)
      for (int s = 0; s < 2; ++s)
        for (Eigen::Index c = 0; c < cols; ++c)
          m(2 * a + s, c) = rest(a, s * cols + c);
    if (i == n - 1) {
      auto& t = mps.tensors[static_cast<std::size_t>(i)];
      for (int s = 0; s < 2; ++s) {
        t[static_cast<std::size_t>(s)].resize(chi_l, 1);
        for (Eigen::Index a = 0; a < chi_l; ++a)
          t[static_cast<std::size_t>(s)](a, 0) = m(2 * a + s, 0);
      }
      break;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double smax = s.size() ? s[0] : 0.0;
    Eigen::Index keep = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s[k] > cutoff * std::max(smax, 1e-300)) ++keep;
    keep = std::max<Eigen::Index>(1, std::min<Eigen::Index>(keep, max_bond));
    Eigen::MatrixXd u = svd.matrixU().leftCols(keep);
    auto& t = mps.tensors[static_cast<std::size_t>(i)];
    for (int si = 0; si < 2; ++si) {
      t[static_cast<std::size_t>(si)].resize(chi_l, keep);
      for (Eigen::Index a = 0; a < chi_l; ++a)
        t[static_cast<std::size_t>(si)].row(a) = u.row(2 * a + si);
    }
    rest = s.head(keep).asDiagonal() *
           svd.matrixV().leftCols(keep).transpose();
  }
  return mps;
}

Eigen::Matrix2d rdm_site(const MpsState& mps, int i) {
  const int n = mps.n_sites;
  Eigen::MatrixXd l = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 0; k < i; ++k)
    l = transfer_left(l, mps.tensors[static_cast<std::size_t>(k)]);
  Eigen::MatrixXd r = Eigen::MatrixXd::Ones(1, 1);
  for (int k = n - 1; k > i; --k)
    r = transfer_right(r, mps.tensors[static_cast<std::size_t>(k)]);
  const auto& a = mps.tensors[static_cast<std::size_t>(i)];
  Eigen::Matrix2d rho;
  for (int sb = 0; sb < 2; ++sb)
    for (int sk = 0; sk < 2; ++sk) {
      const Eigen::MatrixXd g = a[static_cast<std::size_t>(sb)].transpose() *
                                l * a[static_cast<std::size_t>(sk)];
      rho(sb, sk) = (g.array() * r.array()).sum();
    }
  const double tr = rho.trace();
  if (tr > 0) rho /= tr;
  return rho;
}

Eigen::Matrix4d rdm_pair(const MpsState& mps, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == j) throw std::invalid_argument("rdm_pair: distinct sites required");
  const int n = mps.n_sites;
  Eigen::MatrixXd l = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 0; k < i; ++k)
    l = transfer_left(l, mps.tensors[static_cast<std::size_t>(k)]);
  Eigen::MatrixXd r = Eigen::MatrixXd::Ones(1, 1);
  for (int k = n - 1; k > j; --k)
    r = transfer_right(r, mps.tensors[static_cast<std::size_t>(k)]);

  // Middle object: one matrix per (s_i bra, s_i ket) pair.
  const auto& ai = mps.tensors[static_cast<std::size_t>(i)];
  std::array<Eigen::MatrixXd, 4> mid;
  for (int sb = 0; sb < 2; ++sb)
    for (int sk = 0; sk < 2; ++sk)
      mid[static_cast<std::size_t>(sb * 2 + sk)] =
          ai[static_cast<std::size_t>(sb)].transpose() * l *
          ai[static_cast<std::size_t>(sk)];
  for (int k = i + 1; k < j; ++k)
    for (auto& m : mid)
      m = transfer_left(m, mps.tensors[static_cast<std::size_t>(k)]);

  const auto& aj = mps.tensors[static_cast<std::size_t>(j)];
  Eigen::Matrix4d rho;
  for (int sib = 0; sib < 2; ++sib)
    for (int sik = 0; sik < 2; ++sik)
      for (int sjb = 0; sjb < 2; ++sjb)
        for (int sjk = 0; sjk < 2; ++sjk) {
          const Eigen::MatrixXd g =
              aj[static_cast<std::size_t>(sjb)].transpose() *
              mid[static_cast<std::size_t>(sib * 2 + sik)] *
              aj[static_cast<std::size_t>(sjk)];
          rho(sib * 2 + sjb, sik * 2 + sjk) = (g.array() * r.array()).sum();
        }
  const double tr = rho.trace();
  if (tr > 0) rho /= tr;
  return rho;
}

MpsState project_to_dominant_magnetization(const MpsState& mps,
                                           int max_bond) {
  DenseState v = mps_to_dense(mps);
  const int n = v.n_qubits;
  std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t b = 0; b < v.dim(); ++b)
    weight[static_cast<std::size_t>(std::popcount(b))] +=
        std::norm(v.amplitudes[b]);
  int best = 0;
  for (int k = 1; k <= n; ++k)
    if (weight[static_cast<std::size_t>(k)] >
        weight[static_cast<std::size_t>(best)])
      best = k;
  double w2 = 0.0;
  for (std::size_t b = 0; b < v.dim(); ++b) {
    if (std::popcount(b) != best)
      v.amplitudes[b] = Complex{0, 0};
    else
      w2 += std::norm(v.amplitudes[b]);
  }
  if (w2 <= 0)
    throw std::runtime_error("project_to_dominant_magnetization: zero weight");
  const double inv = 1.0 / std::sqrt(w2);
  for (auto& a : v.amplitudes) a *= inv;
  return mps_from_dense(v, max_bond);
}

double mps_energy(const PauliHamiltonian& h, const MpsState& mps) {
  MpoOperator mpo = build_mpo(h);
  Env env(1, Eigen::MatrixXd::Ones(1, 1));
  for (int i = 0; i < mps.n_sites; ++i)
    env = env_left_step(env, mpo.ops[static_cast<std::size_t>(i)],
                        mps.tensors[static_cast<std::size_t>(i)],
                        mpo.bond_dims[static_cast<std::size_t>(i) + 1]);
  const double e = env[0](0, 0);
  const double n2 = [&] {
    Eigen::MatrixXd t = Eigen::MatrixXd::Ones(1, 1);
    for (const auto& a : mps.tensors) t = transfer_left(t, a);
    return t(0, 0);
  }();
  return e / n2;
}

}  // namespace mqida
