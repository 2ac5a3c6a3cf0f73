#pragma once

#include <string>

#include "mqida/layers.hpp"
#include "mqida/statevector.hpp"

namespace mqida {

/// Hardware-efficient ladder: `depth` repetitions of an Ry column followed
/// by the nearest-neighbour CNOT chain, plus one trailing Ry column.
/// Single optimization layer; n * (depth + 1) parameters.
AnsatzCircuit compose_ladder(int n_qubits, int depth);

/// QIDA with CNOT entanglers. Layer 1 is one Ry column followed by its
/// entanglers; every later layer (closure included) is a V-shape block:
/// Ry column, entanglers, Ry column, reversed entanglers, Ry column.
AnsatzCircuit compose_qida_cx(const LayerPlan& plan);

/// QIDA with one general SO(4) gate per pair; six parameters each.
AnsatzCircuit compose_qida_so4(const LayerPlan& plan);

/// CNOTs after compilation: one per CNOT gate, two per SO(4) gate.
int cnot_count(const AnsatzCircuit& circuit);

/// One-line JSON summary (qubits, layers, parameters, gate counts).
std::string circuit_summary_json(const AnsatzCircuit& circuit,
                                 const std::string& name);

}  // namespace mqida
