#pragma once

#include <string>
#include <vector>

#include "qflow/state.hpp"

namespace qflow {

/// One step of a circuit: a named gate on 1-based targets. "QFT" and "IQFT"
/// act on any number of targets (MSB first); "P"/"CPHASE" read `param`.
struct CircuitOp {
  std::string gate;
  std::vector<int> targets;
  double param = 0.0;
};

struct Circuit {
  int n = 0;
  std::vector<CircuitOp> ops;
  /// Optional input bitstrings; an empty list means |0...0>.
  std::vector<std::string> inputs;
};

QubitState apply_op(const QubitState& state, const CircuitOp& op);

/// The input followed by the state after every op.
std::vector<QubitState> run_circuit(const Circuit& circuit, const QubitState& input);

}  // namespace qflow
