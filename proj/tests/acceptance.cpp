// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full reference pipeline plus a 10-seed VQE batch on the
// 3x4 isotropic lattice, so expect a few minutes of wall time.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mqida/ansatz.hpp"
#include "mqida/config.hpp"
#include "mqida/exact.hpp"
#include "mqida/lattice.hpp"
#include "mqida/layers.hpp"
#include "mqida/metrics.hpp"
#include "mqida/mps.hpp"
#include "mqida/pipeline.hpp"
#include "mqida/qmi.hpp"
#include "mqida/vqe.hpp"

using namespace mqida;

namespace {

int g_failures = 0;

void report(bool ok, int number, const std::string& label,
            const std::string& detail = "") {
  std::printf("%s  %2d  %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct System {
  const char* config;
  const char* golden;
  double e_exact;
};

const System kSystems[] = {
    {"3x3_iso.json", "layers_3x3_iso.txt", -4.749327},
    {"2x6_iso.json", "layers_2x6_iso.txt", -6.603472},
    {"3x4_iso.json", "layers_3x4_iso.txt", -6.691680},
    {"3x4_h2.json", "layers_3x4_h2.txt", -9.508473},
    {"3x4_aniso067.json", "layers_3x4_aniso067.txt", -5.338751},
    {"3x4_aniso01.json", "layers_3x4_aniso01.txt", -4.272670},
};

ExperimentConfig load(const char* name) {
  return load_config(std::string(CONFIG_DIR) + "/" + name);
}

DenseState random_state(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  DenseState s;
  s.n_qubits = n;
  s.amplitudes.resize(std::size_t{1} << n);
  double n2 = 0;
  for (auto& a : s.amplitudes) {
    a = Complex(g(rng), g(rng));
    n2 += std::norm(a);
  }
  for (auto& a : s.amplitudes) a /= std::sqrt(n2);
  return s;
}

}  // namespace

int main() {
  // Shared reference data, reused across criteria.
  std::vector<ExperimentConfig> configs;
  std::vector<ExactResult> exact;
  for (const System& sys : kSystems) {
    configs.push_back(load(sys.config));
    exact.push_back(exact_ground_state(build_heisenberg(configs.back().lattice)));
  }

  // 1. Exact ground-state energies.
  {
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < std::size(kSystems); ++k) {
      const double err = std::abs(exact[k].energy - kSystems[k].e_exact);
      if (err > 1e-5) {
        ok = false;
        detail += configs[k].name + " off by " + std::to_string(err) + " ";
      }
    }
    report(ok, 1, "exact energies match the six reference values within 1e-5",
           detail);
  }

  // 2. Neel energies.
  {
    const bool ok = neel_energy(LatticeSpec{3, 3}) == -3.0 &&
                    neel_energy(LatticeSpec{2, 6}) == -4.0 &&
                    neel_energy(LatticeSpec{3, 4}) == -4.25;
    report(ok, 2, "Neel energies are exactly -3.00 / -4.00 / -4.25");
  }

  // 3. DMRG agreement on every 12-site system.
  {
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < std::size(kSystems); ++k) {
      if (configs[k].lattice.n_sites() != 12) continue;
      const PauliHamiltonian h = build_heisenberg(configs[k].lattice);
      DmrgOptions opts;
      opts.max_bond = 64;
      const DmrgResult d = dmrg_ground_state(h, opts);
      MpsState mps = d.state;
      if (conserves_magnetization(h))
        mps = project_to_dominant_magnetization(mps);
      const double e_err = std::abs(mps_energy(h, mps) - exact[k].energy);
      const DenseState dense = mps_to_dense(mps);
      Complex amp{0, 0};
      for (std::size_t b = 0; b < dense.dim(); ++b)
        amp += std::conj(dense.amplitudes[b]) * exact[k].state.amplitudes[b];
      const double overlap = std::abs(amp);
      if (e_err > 1e-6 || overlap < 1.0 - 1e-5) {
        ok = false;
        detail += configs[k].name + " dE=" + std::to_string(e_err) +
                  " 1-ov=" + std::to_string(1.0 - overlap) + " ";
      }
    }
    report(ok, 3, "DMRG chi=64 within 1e-6 and overlap >= 1-1e-5 (12 sites)",
           detail);
  }

  // 4. QMI equivalence (dense vs MPS) on the 3x3 system.
  {
    const PauliHamiltonian h = build_heisenberg(LatticeSpec{3, 3});
    const QmiMatrix dense_qmi = qmi_matrix(exact[0].state);
    DmrgOptions opts;
    opts.max_bond = 64;
    const MpsState mps =
        project_to_dominant_magnetization(dmrg_ground_state(h, opts).state);
    const QmiMatrix mps_qmi = qmi_matrix(mps);
    bool ok = (dense_qmi.values - mps_qmi.values).cwiseAbs().maxCoeff() < 1e-6;
    std::vector<double> site_entropy(9);
    for (int i = 0; i < 9; ++i)
      site_entropy[(std::size_t)i] =
          von_neumann_entropy(dense_rdm_site(exact[0].state, i));
    for (const QmiMatrix* q : {&dense_qmi, &mps_qmi}) {
      ok = ok && (q->values - q->values.transpose()).cwiseAbs().maxCoeff() <
                     1e-12;
      ok = ok && q->values.diagonal().cwiseAbs().maxCoeff() < 1e-12;
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
          if (i == j) continue;
          const double cap =
              2.0 * std::min(site_entropy[(std::size_t)i],
                             site_entropy[(std::size_t)j]);
          ok = ok && q->values(i, j) >= 0.0 &&
               q->values(i, j) <= cap + 1e-9;
        }
    }
    report(ok, 4, "3x3 QMI from DMRG and dense state agree within 1e-6");
  }

  // 5. Layer plans against the golden files (plus the 3x4 regression pair).
  std::vector<LayerPlan> plans;
  {
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < std::size(kSystems); ++k) {
      ExperimentConfig c = configs[k];
      c.backend = "exact";
      const ReferenceBundle ref = prepare_reference(c);
      plans.push_back(ref.plan);
      const std::string golden =
          read_file(std::string(GOLDEN_DIR) + "/" + kSystems[k].golden);
      if (ref.plan.to_text() != golden) {
        ok = false;
        detail += c.name + " plan mismatch ";
      }
    }
    const std::vector<std::pair<int, int>>& layer3 = plans[2].layers[2];
    const bool has45 =
        std::find(layer3.begin(), layer3.end(), std::make_pair(4, 5)) !=
        layer3.end();
    const bool has59 =
        std::find(layer3.begin(), layer3.end(), std::make_pair(5, 9)) !=
        layer3.end();
    if (!has45 || !has59) {
      ok = false;
      detail += "3x4 layer 3 missing 4-5/5-9 ";
    }
    report(ok, 5, "all six layer plans match the golden files byte-for-byte",
           detail);
  }

  // 6. CNOT counts for every table cell.
  {
    bool ok = cnot_count(compose_ladder(9, 4)) == 32 &&
              cnot_count(compose_ladder(9, 5)) == 40 &&
              cnot_count(compose_ladder(12, 4)) == 44 &&
              cnot_count(compose_ladder(12, 5)) == 55 &&
              cnot_count(compose_ladder(12, 6)) == 66;
    const int want_cx[] = {32, 48, 52, 50, 52, 46};
    const int want_so4[] = {40, 54, 56, 54, 56, 54};
    for (std::size_t k = 0; k < std::size(kSystems); ++k) {
      ok = ok && cnot_count(compose_qida_cx(plans[k])) == want_cx[k];
      ok = ok && cnot_count(compose_qida_so4(plans[k])) == want_so4[k];
    }
    report(ok, 6, "CNOT counts match all ladder and QIDA table cells");
  }

  // 7. Identity initialization.
  {
    const double zeros[6] = {0, 0, 0, 0, 0, 0};
    bool ok = (so4_unitary(std::span<const double, 6>(zeros)) -
               Eigen::Matrix4d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-14;
    const PauliHamiltonian h = build_heisenberg(LatticeSpec{3, 4});
    for (const AnsatzCircuit& c :
         {compose_qida_cx(plans[2]), compose_qida_so4(plans[2])}) {
      // Randomize layer 1, keep the rest at zero: the suffix must be a no-op.
      std::vector<double> params((std::size_t)c.n_params, 0.0);
      const auto [first, last] = c.layer_param_slices[0];
      std::mt19937 rng(17);
      std::uniform_real_distribution<double> u(0, 6.28);
      for (int s = first; s < last; ++s) params[(std::size_t)s] = u(rng);
      AnsatzCircuit head = c;
      head.gates.resize((std::size_t)c.layer_gate_begin[1]);
      head.layer_gate_begin = {0};
      head.layer_param_slices = {c.layer_param_slices[0]};
      head.n_params = last;
      const std::vector<double> head_params(params.begin(),
                                            params.begin() + last);
      for (int trial = 0; trial < 100 && ok; ++trial) {
        const DenseState in = random_state(12, 900 + (unsigned)trial);
        const DenseState a = run_circuit(c, params, in);
        const DenseState b = run_circuit(head, head_params, in);
        for (std::size_t k = 0; k < a.dim(); ++k)
          ok = ok && std::abs(a.amplitudes[k] - b.amplitudes[k]) < 1e-10;
      }
      const DenseState init = DenseState::zero_state(12);
      const double e_head = expectation(h, run_circuit(head, head_params, init));
      const double e_full = expectation(h, run_circuit(c, params, init));
      ok = ok && std::abs(e_head - e_full) <= 1e-9;
    }
    report(ok, 7, "zero-parameter layers act as the identity");
  }

  // 8. Analytic gradient vs central finite differences (3x3 QIDA^SO4).
  {
    const PauliHamiltonian h = build_heisenberg(LatticeSpec{3, 3});
    const AnsatzCircuit c = compose_qida_so4(plans[0]);
    const DenseState init = DenseState::zero_state(9);
    bool ok = true;
    double worst = 0.0;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0, 6.2831853);
    for (int point = 0; point < 20; ++point) {
      std::vector<double> p((std::size_t)c.n_params);
      for (auto& x : p) x = u(rng);
      std::vector<double> grad((std::size_t)c.n_params);
      energy_and_gradient(h, c, p, init, grad);
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double step = 1e-5;
        std::vector<double> q = p;
        q[k] = p[k] + step;
        const double ep = expectation(h, run_circuit(c, q, init));
        q[k] = p[k] - step;
        const double em = expectation(h, run_circuit(c, q, init));
        const double fd = (ep - em) / (2 * step);
        worst = std::max(worst, std::abs(fd - grad[k]));
        ok = ok && std::abs(fd - grad[k]) <= 1e-6;
      }
    }
    report(ok, 8, "analytic gradient matches finite differences within 1e-6",
           "max |diff| = " + std::to_string(worst));
  }

  // 9-11. VQE statistics on the 3x4 isotropic system, 10 seeds per ansatz.
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c = configs[2];
    c.n_runs = 10;
    c.threads = std::max(
        1, std::min(8, (int)std::thread::hardware_concurrency()));
    const ReferenceBundle ref = prepare_reference(c);
    MetricSummary so4, cx, ladder;
    std::vector<const BatchResult*> all;
    std::vector<BatchResult> batches;
    batches.reserve(c.ansatze.size());
    for (const AnsatzRequest& req : c.ansatze)
      batches.push_back(run_batch(c, ref, req));
    for (const BatchResult& b : batches) {
      if (b.request.name() == "qida_so4") so4 = b.summary;
      if (b.request.name() == "qida_cx") cx = b.summary;
      if (b.request.name() == "ladder_d5") ladder = b.summary;
      all.push_back(&b);
    }
    const double minutes =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count() /
        60.0;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "so4 %.2f/%.2f cx %.2f ladder %.2f gap %.1f med %.1e "
                  "(%.1f min)",
                  so4.aqe_avg, so4.aqe_best, cx.aqe_avg, ladder.aqe_avg,
                  so4.rqe_avg - ladder.rqe_avg, cx.med, minutes);
    const bool ok9 = so4.aqe_avg >= 93.0 && so4.aqe_best >= 94.5 &&
                     cx.aqe_avg >= 91.5 && ladder.aqe_avg <= 90.0 &&
                     so4.rqe_avg - ladder.rqe_avg >= 10.0 && cx.med <= 0.05 &&
                     minutes < 30.0;
    report(ok9, 9, "3x4 VQE statistics clear every threshold", buf);

    bool ok10 = true;
    for (const BatchResult* b : all) {
      for (const VqeRunRecord& r : b->records)
        ok10 = ok10 && r.energy >= ref.exact_energy - 1e-9;
      for (const auto& traj : b->trajectories)
        for (const TrajectoryPoint& p : traj)
          ok10 = ok10 && p.energy >= ref.exact_energy - 1e-9;
    }
    report(ok10, 10, "variational bound holds at every recorded iteration");

    bool ok11 = rqe(ref.exact_energy, ref.exact_energy, ref.neel) == 100.0 &&
                rqe(ref.neel, ref.exact_energy, ref.neel) == 0.0;
    for (const BatchResult* b : all)
      ok11 = ok11 &&
             std::abs(b->summary.maed - b->summary.med * 100.0 /
                                            std::abs(ref.exact_energy)) < 1e-9;
    report(ok11, 11, "metric identities (MAED vs MED, RQE anchors) hold");
  }

  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
