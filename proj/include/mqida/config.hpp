#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mqida/bfgs.hpp"
#include "mqida/lattice.hpp"

namespace mqida {

struct AnsatzRequest {
  enum class Kind { QidaCx, QidaSo4, Ladder };
  Kind kind = Kind::QidaSo4;
  int depth = 0;  // ladder only

  std::string name() const;
  static AnsatzRequest parse(const std::string& text);
};

/// Declarative experiment description, loaded from a JSON file.
struct ExperimentConfig {
  std::string name;  // system label used in outputs
  LatticeSpec lattice;

  std::string backend = "exact";  // "exact" or "dmrg"
  int dmrg_chi = 64;
  int dmrg_sweeps = 12;

  /// Descending QMI thresholds; empty means start/step expansion.
  std::vector<double> finesse;
  double finesse_start = 0.9;
  double finesse_step = 0.1;
  int finesse_count = 9;

  std::vector<AnsatzRequest> ansatze;
  int n_runs = 10;
  std::uint64_t base_seed = 1;
  BfgsOptions optimizer;
  std::string initial_state = "zero";  // "zero" or "neel"
  std::string out_dir = "out";
  int threads = 1;

  /// Entangler-layer indices to merge into the first listed index
  /// (e.g. [[0,1,2]] for the 2x6 system).
  std::vector<std::vector<int>> layer_merges;

  /// Staggered pinning strength applied only when preparing the QMI
  /// reference state; 0 disables it.
  double qmi_pinning_eps = 0.0;

  std::vector<double> finesse_thresholds() const;
  void validate() const;
};

ExperimentConfig parse_config_json(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace mqida
