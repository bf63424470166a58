#pragma once

#include <vector>

#include "qflow/state.hpp"

namespace qflow {

struct DeutschJozsaRun {
  /// Full 4-qubit state (3 inputs, ancilla last) after each stage:
  /// init |0001>, H on all qubits, oracle, H on the inputs.
  std::vector<QubitState> stages;
  /// Input register right after the oracle, with the ancilla's (|0>-|1>)
  /// factor divided out: sum_x (-1)^f(x) |x> up to norm.
  QubitState oracle_inputs;
  /// Input register after the final Hadamards.
  QubitState final_inputs;
  /// True when the |000> outcome has probability 1.
  bool constant = false;
};

/// Three-input Deutsch-Jozsa with one ancilla.
DeutschJozsaRun deutsch_jozsa(const OracleTable& f);

struct PeriodFindingRun {
  /// Inputs first then ancillas: init, H on inputs, oracle, QFT on inputs.
  std::vector<QubitState> stages;
  /// Exact measurement distribution over the input register.
  std::vector<double> distribution;
  /// Input values with nonzero probability.
  std::vector<std::size_t> support;
};

/// Period finding on a truth table. The oracle writes f(x) in binary onto the
/// ancilla register.
PeriodFindingRun shor_period_find(const OracleTable& f, int n_in = 2, int n_anc = 2);

/// Smallest r dividing the table size with f(x + r) = f(x) for all x.
std::size_t classical_period(const OracleTable& f);

}  // namespace qflow
