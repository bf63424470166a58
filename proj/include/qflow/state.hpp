#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qflow/error.hpp"

namespace qflow {

/// Dense state vector over the 2^n computational basis states.
///
/// Qubit 1 is the most significant bit: |s1 s2 ... sn> lives at index
/// sum_j s_j 2^(n-j), so |s1 s2> is the same as |2 s1 + s2>. States are kept
/// unnormalized; probabilities normalize on demand.
class QubitState {
 public:
  QubitState() = default;
  /// Zero state on n qubits.
  explicit QubitState(int n);
  QubitState(int n, std::vector<cplx> amplitudes);

  int num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  const std::vector<cplx>& amplitudes() const noexcept { return amps_; }
  std::span<cplx> mutable_amplitudes() noexcept { return amps_; }

  cplx operator[](std::size_t index) const { return amps_.at(index); }
  cplx& operator[](std::size_t index) { return amps_.at(index); }

  double norm() const;
  double norm_squared() const;
  bool is_zero() const;
  QubitState normalized() const;
  std::vector<double> probabilities() const;

  QubitState& operator+=(const QubitState& other);
  QubitState& operator*=(cplx s);
  friend QubitState operator+(QubitState a, const QubitState& b) { return a += b; }
  friend QubitState operator*(cplx s, QubitState a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

/// Bit of qubit `qubit` (1-based, qubit 1 = MSB) inside basis index `index`.
inline int qubit_bit(std::size_t index, int n, int qubit) {
  return static_cast<int>((index >> (n - qubit)) & 1U);
}

/// Basis index of a bitstring such as "101".
std::size_t basis_index(std::string_view bits);
/// Bitstring of length n for a basis index.
std::string basis_label(std::size_t index, int n);

/// Sesquilinear <a|b> (conjugate-linear in a).
cplx inner_product(const QubitState& a, const QubitState& b);

QubitState make_basis_state(int n, std::string_view bits);

enum class NamedState { GHZ, W, Bell00Plus, Bell00Minus, Bell01Plus, Bell01Minus };

NamedState parse_named_state(std::string_view name);
/// Unnormalized integer-amplitude entangled states, e.g. GHZ = |0..0> + |1..1>.
QubitState make_named_state(NamedState name, int n);

/// Single-qubit a|0> + b|1>.
QubitState single_qubit(cplx alpha, cplx beta);

/// Kronecker product, qubits of a first.
QubitState tensor(const QubitState& a, const QubitState& b);

/// 1- or 2-qubit unitary. For two-qubit gates the first target is the high
/// bit of the 4x4 matrix index.
class Gate {
 public:
  Gate(int arity, std::vector<cplx> matrix, std::string label);

  int arity() const noexcept { return arity_; }
  const std::vector<cplx>& matrix() const noexcept { return matrix_; }
  const std::string& label() const noexcept { return label_; }
  cplx at(int row, int col) const { return matrix_[row * (1 << arity_) + col]; }

  Gate adjoint() const;

  static Gate I();
  static Gate X();
  static Gate Y();
  static Gate Z();
  static Gate H();
  static Gate S();
  static Gate T();
  static Gate SqrtX();
  static Gate Phase(double phi);
  static Gate CNOT();
  static Gate CZ();
  static Gate CPhase(double phi);
  static Gate SWAP();

  /// Looks up a gate by its label ("H", "SX", "CPHASE", ...). `param` is the
  /// phase for parametrized gates.
  static Gate by_name(std::string_view name, double param = 0.0);

 private:
  int arity_;
  std::vector<cplx> matrix_;
  std::string label_;
};

/// Applies `g` to the given 1-based target qubits.
QubitState apply_gate(const QubitState& state, const Gate& g, std::span<const int> targets);
QubitState apply_gate(const QubitState& state, const Gate& g, std::initializer_list<int> targets);

/// Unitary DFT with omega = exp(2 pi i / 2^k) over the listed register
/// (qubits in MSB-first order); the remaining qubits are spectators.
QubitState qft(const QubitState& state, std::span<const int> register_qubits);
QubitState inverse_qft(const QubitState& state, std::span<const int> register_qubits);
/// Whole-register transforms.
QubitState qft(const QubitState& state);
QubitState inverse_qft(const QubitState& state);

/// Truth table of a classical function on k input bits.
struct OracleTable {
  int input_bits = 0;
  int output_bits = 0;
  std::vector<std::uint32_t> values;

  OracleTable(int input_bits, int output_bits, std::vector<std::uint32_t> values);
  std::uint32_t operator()(std::size_t x) const { return values.at(x); }
};

/// |x>|y> -> |x>|y xor f(x)>. Inputs occupy qubits starting at `first_input`,
/// outputs start at `first_output`; both registers are binary, MSB first.
QubitState apply_oracle(const QubitState& state, const OracleTable& f, int first_input, int first_output);

}  // namespace qflow
