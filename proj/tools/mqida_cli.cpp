#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mqida/exact.hpp"
#include "mqida/pipeline.hpp"

namespace {

using namespace mqida;

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int runs = 0;
  std::string out;
  std::string backend;
  int threads = 0;
  bool self_check = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required = true) {
  auto* opt = cmd->add_option("--config", f.config_path, "experiment config");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "base seed override")
      ->each([&](const std::string&) { f.seed_set = true; });
  cmd->add_option("--runs", f.runs, "number of VQE runs override");
  cmd->add_option("--out", f.out, "output directory override");
  cmd->add_option("--backend", f.backend, "reference backend override")
      ->check(CLI::IsMember({"exact", "dmrg"}));
  cmd->add_option("--threads", f.threads, "worker threads override");
  cmd->add_flag("--self-check", f.self_check,
                "validate acceptance invariants after running");
}

ExperimentConfig load_with_overrides(const CommonFlags& f) {
  ExperimentConfig c = load_config(f.config_path);
  if (f.seed_set) c.base_seed = f.seed;
  if (f.runs > 0) c.n_runs = f.runs;
  if (!f.out.empty()) c.out_dir = f.out;
  if (!f.backend.empty()) c.backend = f.backend;
  if (f.threads > 0) c.threads = f.threads;
  c.validate();
  return c;
}

int cmd_ham(const CommonFlags& f) {
  const ExperimentConfig c = load_with_overrides(f);
  const PauliHamiltonian h = build_heisenberg(c.lattice);
  const auto edges = lattice_edges(c.lattice);
  std::cout << "system: " << c.name << " (" << c.lattice.label() << ")\n";
  std::cout << "qubits: " << h.n_qubits << "\n";
  std::cout << "terms: " << h.terms.size() << "\n";
  std::cout << "edges (" << edges.size() << "):";
  for (const auto& [i, j] : edges) std::cout << ' ' << i << '-' << j;
  std::cout << "\n";
  std::cout.precision(10);
  std::cout << "E_neel: " << neel_energy(c.lattice) << "\n";
  if (h.n_qubits <= 14)
    std::cout << "E_exact: " << exact_ground_state(h).energy << "\n";
  return 0;
}

int cmd_qmi(const CommonFlags& f) {
  const ExperimentConfig c = load_with_overrides(f);
  const ReferenceBundle ref = prepare_reference(c);
  std::filesystem::create_directories(c.out_dir);
  const std::filesystem::path dir(c.out_dir);
  std::ofstream(dir / "qmi.csv") << ref.qmi.to_csv();
  std::ofstream(dir / "qmi_normalized.csv") << ref.qmi.normalized().to_csv();
  std::cout.precision(10);
  std::cout << "qmi written to " << (dir / "qmi.csv").string()
            << " and " << (dir / "qmi_normalized.csv").string() << "\n";
  std::cout << "max off-diagonal: " << ref.qmi.max_offdiag() << "\n";
  return 0;
}

int cmd_layers(const CommonFlags& f) {
  const ExperimentConfig c = load_with_overrides(f);
  const ReferenceBundle ref = prepare_reference(c);
  std::filesystem::create_directories(c.out_dir);
  const std::filesystem::path path =
      std::filesystem::path(c.out_dir) / "layers.txt";
  const std::string text = ref.plan.to_text();
  std::ofstream(path) << text;
  std::cout << text;
  std::cout << "written to " << path.string() << "\n";
  return 0;
}

int cmd_run(const CommonFlags& f) {
  const ExperimentConfig c = load_with_overrides(f);
  const std::vector<BatchResult> batches = run_experiment(c);
  std::cout << metrics_csv_header() << ",cnots\n";
  for (const auto& b : batches)
    std::cout << metrics_csv_row(c.name, b.request.name(), b.summary) << ','
              << b.cnots << "\n";
  std::cout << "outputs in " << c.out_dir << "\n";

  if (f.self_check) {
    const double exact = batches.front().records.front().exact_energy;
    bool ok = true;
    for (const auto& b : batches) {
      for (std::size_t r = 0; r < b.records.size(); ++r) {
        for (const auto& p : b.trajectories[r])
          if (p.energy < exact - 1e-9) ok = false;
        if (b.records[r].energy < exact - 1e-9) ok = false;
      }
      const double maed_expected = b.summary.med * 100.0 / std::abs(exact);
      if (std::abs(b.summary.maed - maed_expected) > 1e-9) ok = false;
    }
    if (!ok) {
      std::cerr << "self-check failed: acceptance invariant violated\n";
      return 3;
    }
    std::cout << "self-check passed\n";
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& paths) {
  std::vector<VqeRunRecord> records;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in)
      throw std::invalid_argument("report: cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) records.push_back(VqeRunRecord::from_jsonl(line));
  }
  std::cout << report_from_records(records);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-QIDA layered-ansatz VQE pipeline"};
  app.require_subcommand(1);

  CommonFlags fl;
  std::vector<std::string> report_paths;
  auto* ham = app.add_subcommand("ham", "Hamiltonian and reference energies");
  add_common(ham, fl);
  auto* qmi = app.add_subcommand("qmi", "reference-state QMI matrix");
  add_common(qmi, fl);
  auto* layers = app.add_subcommand("layers", "threshold-band layer plan");
  add_common(layers, fl);
  auto* run = app.add_subcommand("run", "batched VQE and metrics");
  add_common(run, fl);
  auto* report =
      app.add_subcommand("report", "recompute summary from run records");
  report->add_option("records", report_paths, "runs.jsonl files")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // bad command line counts as a config error
  }

  try {
    if (ham->parsed()) return cmd_ham(fl);
    if (qmi->parsed()) return cmd_qmi(fl);
    if (layers->parsed()) return cmd_layers(fl);
    if (run->parsed()) return cmd_run(fl);
    if (report->parsed()) return cmd_report(report_paths);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
