#include "mqida/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mqida/exact.hpp"
#include "mqida/mps.hpp"

namespace mqida {

namespace {

PauliHamiltonian with_pinning(const PauliHamiltonian& h,
                              const LatticeSpec& spec, double eps) {
  if (eps == 0.0) return h;
  PauliHamiltonian out = h;
  const PauliHamiltonian pin = staggered_field(spec, eps);
  out.terms.insert(out.terms.end(), pin.terms.begin(), pin.terms.end());
  out.merge_duplicates();
  return out;
}

}  // namespace

ReferenceBundle prepare_reference(const ExperimentConfig& config) {
  config.validate();
  ReferenceBundle ref;
  ref.hamiltonian = build_heisenberg(config.lattice);
  ref.neel = neel_energy(config.lattice);
  ref.exact_energy = exact_ground_state(ref.hamiltonian).energy;

  const PauliHamiltonian h_qmi = with_pinning(
      ref.hamiltonian, config.lattice, config.qmi_pinning_eps);
  if (config.backend == "exact") {
    ref.qmi = qmi_matrix(exact_ground_state(h_qmi).state);
  } else {
    DmrgOptions opts;
    opts.max_bond = config.dmrg_chi;
    opts.sweeps = config.dmrg_sweeps;
    DmrgResult dmrg = dmrg_ground_state(h_qmi, opts);
    MpsState mps = conserves_magnetization(h_qmi)
                       ? project_to_dominant_magnetization(dmrg.state)
                       : dmrg.state;
    ref.qmi = qmi_matrix(mps);
  }

  FinesseRatio finesse{config.finesse_thresholds()};
  ref.plan = build_layers(ref.qmi, finesse);
  for (const auto& merge : config.layer_merges) merge_layers(ref.plan, merge);
  append_closure(ref.plan);
  ref.plan.validate();
  return ref;
}

AnsatzCircuit compose_for(const AnsatzRequest& request,
                          const LayerPlan& plan) {
  switch (request.kind) {
    case AnsatzRequest::Kind::QidaCx: return compose_qida_cx(plan);
    case AnsatzRequest::Kind::QidaSo4: return compose_qida_so4(plan);
    case AnsatzRequest::Kind::Ladder:
      return compose_ladder(plan.n_qubits, request.depth);
  }
  throw std::logic_error("compose_for: unknown ansatz kind");
}

BatchResult run_batch(const ExperimentConfig& config,
                      const ReferenceBundle& reference,
                      const AnsatzRequest& request) {
  const AnsatzCircuit circuit = compose_for(request, reference.plan);
  VqeOptions vopts;
  vopts.bfgs = config.optimizer;
  if (config.initial_state == "neel")
    vopts.initial_basis_state = neel_state_index(config.lattice);

  BatchResult batch;
  batch.request = request;
  batch.cnots = cnot_count(circuit);
  batch.records.resize(static_cast<std::size_t>(config.n_runs));
  batch.trajectories.resize(static_cast<std::size_t>(config.n_runs));

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= config.n_runs || failed.load()) break;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t seed =
            derive_seed(config.base_seed, static_cast<std::uint64_t>(r));
        VqeResult res;
        if (request.kind == AnsatzRequest::Kind::Ladder) {
          res = vqe(reference.hamiltonian, circuit,
                    random_params(circuit.n_params, derive_seed(seed, 0)),
                    vopts);
        } else {
          res = iterative_layered_vqe(reference.hamiltonian, circuit, seed,
                                      vopts);
        }
        const auto t1 = std::chrono::steady_clock::now();
        VqeRunRecord rec;
        rec.system = config.name;
        rec.ansatz = request.name();
        rec.seed = seed;
        rec.energy = res.energy;
        rec.exact_energy = reference.exact_energy;
        rec.neel_energy = reference.neel;
        rec.iterations = res.iterations;
        rec.n_evals = res.n_evals;
        rec.converged = res.converged;
        rec.wall_seconds =
            std::chrono::duration<double>(t1 - t0).count();
        rec.stage_energies = res.stage_energies;
        batch.records[static_cast<std::size_t>(r)] = std::move(rec);
        batch.trajectories[static_cast<std::size_t>(r)] =
            std::move(res.trajectory);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed = true;
        error_message = e.what();
      }
    }
  };

  const int n_threads = std::max(1, std::min(config.threads, config.n_runs));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failed)
    throw std::runtime_error("run_batch: " + error_message);

  std::vector<double> energies;
  energies.reserve(batch.records.size());
  for (const auto& rec : batch.records) energies.push_back(rec.energy);
  batch.summary =
      summarize_runs(energies, reference.exact_energy, reference.neel);
  return batch;
}

std::vector<BatchResult> run_experiment(const ExperimentConfig& config) {
  const ReferenceBundle ref = prepare_reference(config);
  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path dir(config.out_dir);

  {
    std::ofstream(dir / "qmi.csv") << ref.qmi.to_csv();
    std::ofstream(dir / "qmi_normalized.csv") << ref.qmi.normalized().to_csv();
    std::ofstream(dir / "layers.txt") << ref.plan.to_text();
  }

  std::vector<BatchResult> batches;
  std::ofstream runs(dir / "runs.jsonl");
  std::ofstream traj(dir / "trajectories.csv");
  std::ofstream summary(dir / "summary.csv");
  traj << "run_id,iteration,energy,phase\n";
  summary << metrics_csv_header() << ",cnots\n";
  traj.precision(12);

  for (const auto& request : config.ansatze) {
    BatchResult batch = run_batch(config, ref, request);
    for (std::size_t r = 0; r < batch.records.size(); ++r) {
      runs << batch.records[r].to_jsonl() << '\n';
      const std::string run_id =
          request.name() + ":" + std::to_string(r);
      for (const auto& p : batch.trajectories[r])
        traj << run_id << ',' << p.iteration << ',' << p.energy << ','
             << p.phase << '\n';
    }
    summary << metrics_csv_row(config.name, request.name(),
                               batch.summary)
            << ',' << batch.cnots << '\n';
    batches.push_back(std::move(batch));
  }
  return batches;
}

std::string report_from_records(const std::vector<VqeRunRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("report: no records");
  // Group by (system, ansatz) preserving first-seen order.
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>,
           std::vector<const VqeRunRecord*>>
      groups;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.system, r.ansatz);
    if (groups.find(key) == groups.end()) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::ostringstream os;
  os << metrics_csv_header() << '\n';
  for (const auto& key : order) {
    const auto& group = groups[key];
    std::vector<double> energies;
    for (const auto* r : group) {
      energies.push_back(r->energy);
      if (r->exact_energy != group.front()->exact_energy ||
          r->neel_energy != group.front()->neel_energy)
        throw std::invalid_argument(
            "report: inconsistent reference energies within a group");
    }
    const MetricSummary m = summarize_runs(
        energies, group.front()->exact_energy, group.front()->neel_energy);
    os << metrics_csv_row(key.first, key.second, m) << '\n';
  }
  return os.str();
}

}  // namespace mqida
