#include "mqida/vqe.hpp"

#include <json.hpp>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mqida {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
  std::uint64_t z = base + (k + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<double> random_params(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = u(rng);
  return out;
}

namespace {

BfgsResult minimize_slice(const PauliHamiltonian& h,
                          const AnsatzCircuit& circuit,
                          const DenseState& initial,
                          std::vector<double>& params, int first, int last,
                          BfgsOptions bopts, const std::string& phase,
                          VqeResult& out) {
  bopts.on_iteration = [&](int, double e) {
    out.trajectory.push_back({static_cast<int>(out.trajectory.size()), e,
                              phase});
  };
  const int k = last - first;
  Eigen::VectorXd x0(k);
  for (int i = 0; i < k; ++i)
    x0[i] = params[static_cast<std::size_t>(first + i)];
  std::vector<double> full = params;
  std::vector<double> full_grad(full.size());
  Objective obj = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    for (int i = 0; i < k; ++i)
      full[static_cast<std::size_t>(first + i)] = x[i];
    const double e = energy_and_gradient(h, circuit, full, initial, full_grad);
    for (int i = 0; i < k; ++i)
      g[i] = full_grad[static_cast<std::size_t>(first + i)];
    return e;
  };
  BfgsResult r = bfgs_minimize(obj, x0, bopts);
  for (int i = 0; i < k; ++i)
    params[static_cast<std::size_t>(first + i)] = r.x[i];
  return r;
}

}  // namespace

VqeResult vqe(const PauliHamiltonian& h, const AnsatzCircuit& circuit,
              const std::vector<double>& initial_params,
              const VqeOptions& opts) {
  if (static_cast<int>(initial_params.size()) != circuit.n_params)
    throw std::invalid_argument("vqe: parameter count mismatch");
  const DenseState init =
      DenseState::basis_state(circuit.n_qubits, opts.initial_basis_state);
  std::vector<double> params = initial_params;
  VqeResult out;
  BfgsResult r = minimize_slice(h, circuit, init, params, 0,
                                circuit.n_params, opts.bfgs, "full", out);
  out.energy = r.value;
  out.params = std::move(params);
  out.stage_energies = {r.value};
  out.iterations = r.iterations;
  out.n_evals = r.n_evals;
  out.converged = r.converged;
  return out;
}

VqeResult iterative_layered_vqe(const PauliHamiltonian& h,
                                const AnsatzCircuit& circuit,
                                std::uint64_t seed, const VqeOptions& opts) {
  const DenseState init =
      DenseState::basis_state(circuit.n_qubits, opts.initial_basis_state);
  const int n_layers = circuit.n_layers();
  std::vector<double> params;
  VqeResult out;

  for (int li = 0; li < n_layers; ++li) {
    const auto [first, last] = circuit.layer_param_slices[
        static_cast<std::size_t>(li)];
    // Build the truncated circuit covering layers [0, li].
    AnsatzCircuit sub;
    sub.n_qubits = circuit.n_qubits;
    const int gate_end = li + 1 < n_layers
                             ? circuit.layer_gate_begin[
                                   static_cast<std::size_t>(li) + 1]
                             : static_cast<int>(circuit.gates.size());
    sub.gates.assign(circuit.gates.begin(), circuit.gates.begin() + gate_end);
    sub.layer_gate_begin.assign(
        circuit.layer_gate_begin.begin(),
        circuit.layer_gate_begin.begin() + li + 1);
    sub.layer_param_slices.assign(
        circuit.layer_param_slices.begin(),
        circuit.layer_param_slices.begin() + li + 1);
    sub.n_params = last;

    if (li == 0) {
      params = random_params(last - first, derive_seed(seed, 0));
    } else {
      params.resize(static_cast<std::size_t>(last), 0.0);
    }

    // Phase (a): optimize only the new layer's parameters.
    const std::string tag = "layer" + std::to_string(li + 1);
    BfgsResult ra = minimize_slice(h, sub, init, params, first, last,
                                   opts.bfgs, tag + ":new", out);
    out.iterations += ra.iterations;
    out.n_evals += ra.n_evals;
    out.converged = ra.converged;
    out.energy = ra.value;

    // Phase (b): relax every parameter jointly.
    if (li > 0) {
      BfgsResult rb = minimize_slice(h, sub, init, params, 0, last,
                                     opts.bfgs, tag + ":relax", out);
      out.iterations += rb.iterations;
      out.n_evals += rb.n_evals;
      out.converged = rb.converged;
      out.energy = rb.value;
    }
    out.stage_energies.push_back(out.energy);
  }
  out.params = std::move(params);
  return out;
}

std::string VqeRunRecord::to_jsonl() const {
  nlohmann::json j{{"system", system},
                   {"ansatz", ansatz},
                   {"seed", seed},
                   {"energy", energy},
                   {"exact_energy", exact_energy},
                   {"neel_energy", neel_energy},
                   {"iterations", iterations},
                   {"n_evals", n_evals},
                   {"converged", converged},
                   {"wall_seconds", wall_seconds},
                   {"stage_energies", stage_energies}};
  return j.dump();
}

VqeRunRecord VqeRunRecord::from_jsonl(const std::string& line) {
  const nlohmann::json j = nlohmann::json::parse(line);
  VqeRunRecord r;
  r.system = j.at("system").get<std::string>();
  r.ansatz = j.at("ansatz").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.energy = j.at("energy").get<double>();
  r.exact_energy = j.at("exact_energy").get<double>();
  r.neel_energy = j.at("neel_energy").get<double>();
  r.iterations = j.at("iterations").get<int>();
  r.n_evals = j.at("n_evals").get<int>();
  r.converged = j.at("converged").get<bool>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  r.stage_energies = j.at("stage_energies").get<std::vector<double>>();
  return r;
}

}  // namespace mqida
