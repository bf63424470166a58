#include "qflow/circuit.hpp"

namespace qflow {

QubitState apply_op(const QubitState& state, const CircuitOp& op) {
  if (op.gate == "QFT") return qft(state, op.targets);
  if (op.gate == "IQFT") return inverse_qft(state, op.targets);
  return apply_gate(state, Gate::by_name(op.gate, op.param), op.targets);
}

std::vector<QubitState> run_circuit(const Circuit& circuit, const QubitState& input) {
  if (input.num_qubits() != circuit.n) throw InvalidArgument("circuit and input state have different qubit counts");
  std::vector<QubitState> steps{input};
  for (const auto& op : circuit.ops) steps.push_back(apply_op(steps.back(), op));
  return steps;
}

}  // namespace qflow
