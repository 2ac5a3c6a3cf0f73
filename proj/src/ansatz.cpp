#include "mqida/ansatz.hpp"

#include <json.hpp>
#include <stdexcept>

namespace mqida {

namespace {

void begin_layer(AnsatzCircuit& c) {
  c.layer_gate_begin.push_back(static_cast<int>(c.gates.size()));
  c.layer_param_slices.emplace_back(c.n_params, c.n_params);
}

void end_layer(AnsatzCircuit& c) {
  c.layer_param_slices.back().second = c.n_params;
}

void add_ry_column(AnsatzCircuit& c) {
  for (int q = 0; q < c.n_qubits; ++q)
    c.gates.push_back({GateKind::RY, q, -1, c.n_params++});
}

void add_cnot(AnsatzCircuit& c, int control, int target) {
  c.gates.push_back({GateKind::CNOT, control, target, -1});
}

}  // namespace

AnsatzCircuit compose_ladder(int n_qubits, int depth) {
  if (n_qubits < 2 || depth < 1)
    throw std::invalid_argument("compose_ladder: need >= 2 qubits, depth >= 1");
  AnsatzCircuit c;
  c.n_qubits = n_qubits;
  begin_layer(c);
  for (int d = 0; d < depth; ++d) {
    add_ry_column(c);
    for (int q = 0; q + 1 < n_qubits; ++q) add_cnot(c, q, q + 1);
  }
  add_ry_column(c);
  end_layer(c);
  c.validate();
  return c;
}

AnsatzCircuit compose_qida_cx(const LayerPlan& plan) {
  plan.validate();
  AnsatzCircuit c;
  c.n_qubits = plan.n_qubits;
  for (std::size_t li = 0; li < plan.layers.size(); ++li) {
    const auto& pairs = plan.layers[li];
    begin_layer(c);
    add_ry_column(c);
    for (const auto& [i, j] : pairs) add_cnot(c, i, j);
    if (li > 0) {
      add_ry_column(c);
      for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
        add_cnot(c, it->first, it->second);
      add_ry_column(c);
    }
    end_layer(c);
  }
  c.validate();
  return c;
}

AnsatzCircuit compose_qida_so4(const LayerPlan& plan) {
  plan.validate();
  AnsatzCircuit c;
  c.n_qubits = plan.n_qubits;
  for (const auto& pairs : plan.layers) {
    begin_layer(c);
    for (const auto& [i, j] : pairs) {
      c.gates.push_back({GateKind::SO4, i, j, c.n_params});
      c.n_params += 6;
    }
    end_layer(c);
  }
  c.validate();
  return c;
}

int cnot_count(const AnsatzCircuit& circuit) {
  int k = 0;
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::CNOT) k += 1;
    if (g.kind == GateKind::SO4) k += 2;
  }
  return k;
}

std::string circuit_summary_json(const AnsatzCircuit& circuit,
                                 const std::string& name) {
  int n_rot = 0, n_cnot = 0, n_so4 = 0;
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::CNOT: ++n_cnot; break;
      case GateKind::SO4: ++n_so4; break;
      default: ++n_rot; break;
    }
  }
  nlohmann::json j{{"ansatz", name},
                   {"n_qubits", circuit.n_qubits},
                   {"n_layers", circuit.n_layers()},
                   {"n_params", circuit.n_params},
                   {"rotations", n_rot},
                   {"cnot_gates", n_cnot},
                   {"so4_gates", n_so4},
                   {"cnot_count", cnot_count(circuit)}};
  return j.dump();
}

}  // namespace mqida
