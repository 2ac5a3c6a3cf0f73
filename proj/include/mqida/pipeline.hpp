#pragma once

#include <string>
#include <vector>

#include "mqida/ansatz.hpp"
#include "mqida/config.hpp"
#include "mqida/layers.hpp"
#include "mqida/metrics.hpp"
#include "mqida/qmi.hpp"
#include "mqida/vqe.hpp"

namespace mqida {

/// Everything derived from the lattice before any VQE run.
struct ReferenceBundle {
  PauliHamiltonian hamiltonian;
  double exact_energy = 0.0;
  double neel = 0.0;
  QmiMatrix qmi;  // raw (unnormalized) mutual information
  LayerPlan plan;  // entangler layers plus closure
};

/// Reference state, QMI matrix and layer plan for the configured backend.
/// A nonzero qmi_pinning_eps adds the staggered field only while preparing
/// the QMI reference state; reported energies are for the bare Hamiltonian.
ReferenceBundle prepare_reference(const ExperimentConfig& config);

AnsatzCircuit compose_for(const AnsatzRequest& request, const LayerPlan& plan);

struct BatchResult {
  AnsatzRequest request;
  int cnots = 0;
  std::vector<VqeRunRecord> records;
  /// trajectories[r] belongs to records[r].
  std::vector<std::vector<TrajectoryPoint>> trajectories;
  MetricSummary summary;
};

/// n_runs independent VQE runs of one ansatz, parallelized across runs.
BatchResult run_batch(const ExperimentConfig& config,
                      const ReferenceBundle& reference,
                      const AnsatzRequest& request);

/// Full pipeline: reference, all requested batches, files written under
/// config.out_dir (qmi.csv, qmi_normalized.csv, layers.txt, runs.jsonl,
/// trajectories.csv, summary.csv).
std::vector<BatchResult> run_experiment(const ExperimentConfig& config);

/// Summary CSV recomputed from stored records, one row per (system, ansatz).
std::string report_from_records(const std::vector<VqeRunRecord>& records);

}  // namespace mqida
