#include "qflow/algorithms.hpp"

#include <cmath>
#include <numbers>

namespace qflow {

namespace {

constexpr double kSupportTol = 1e-12;

QubitState hadamard_all(QubitState s, int first, int count) {
  for (int q = first; q < first + count; ++q) s = apply_gate(s, Gate::H(), {q});
  return s;
}

// Divides out a (|0> - |1>) factor on the last qubit.
QubitState strip_minus_ancilla(const QubitState& s) {
  const int n = s.num_qubits() - 1;
  QubitState reg(n);
  for (std::size_t x = 0; x < reg.dim(); ++x) reg[x] = (s[2 * x] - s[2 * x + 1]) / std::numbers::sqrt2;
  return reg;
}

}  // namespace

DeutschJozsaRun deutsch_jozsa(const OracleTable& f) {
  if (f.input_bits != 3 || f.output_bits != 1) throw InvalidArgument("Deutsch-Jozsa expects a Boolean function of 3 bits");
  for (auto v : f.values) {
    if (v > 1) throw InvalidArgument("Deutsch-Jozsa oracle must be Boolean");
  }

  DeutschJozsaRun run;
  QubitState s = make_basis_state(4, "0001");
  run.stages.push_back(s);
  s = hadamard_all(s, 1, 4);
  run.stages.push_back(s);
  s = apply_oracle(s, f, 1, 4);
  run.stages.push_back(s);
  run.oracle_inputs = strip_minus_ancilla(s);
  s = hadamard_all(s, 1, 3);
  run.stages.push_back(s);
  run.final_inputs = strip_minus_ancilla(s);
  run.constant = std::abs(1.0 - run.final_inputs.probabilities()[0]) < kSupportTol;
  return run;
}

PeriodFindingRun shor_period_find(const OracleTable& f, int n_in, int n_anc) {
  if (f.input_bits != n_in) throw InvalidArgument("oracle input width does not match the input register");
  if (f.output_bits > n_anc) throw InvalidArgument("oracle values exceed the ancilla capacity");
  const OracleTable g(n_in, n_anc, f.values);

  PeriodFindingRun run;
  QubitState s(n_in + n_anc);
  s[0] = 1.0;
  run.stages.push_back(s);
  s = hadamard_all(s, 1, n_in);
  run.stages.push_back(s);
  s = apply_oracle(s, g, 1, n_in + 1);
  run.stages.push_back(s);
  std::vector<int> inputs;
  for (int q = 1; q <= n_in; ++q) inputs.push_back(q);
  s = qft(s, inputs);
  run.stages.push_back(s);

  const auto p = s.probabilities();
  const std::size_t anc_dim = std::size_t{1} << n_anc;
  run.distribution.assign(std::size_t{1} << n_in, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) run.distribution[i / anc_dim] += p[i];
  for (std::size_t k = 0; k < run.distribution.size(); ++k) {
    if (run.distribution[k] > kSupportTol) run.support.push_back(k);
  }
  return run;
}

std::size_t classical_period(const OracleTable& f) {
  const std::size_t size = f.values.size();
  for (std::size_t r = 1; r < size; ++r) {
    if (size % r != 0) continue;
    bool ok = true;
    for (std::size_t x = 0; x < size && ok; ++x) ok = f(x) == f((x + r) % size);
    if (ok) return r;
  }
  return size;
}

}  // namespace qflow
