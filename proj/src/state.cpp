#include "qflow/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace qflow {

namespace {

constexpr int kMaxQubits = 24;
constexpr double kUnitaryTol = 1e-12;

std::size_t dim_of(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw InvalidArgument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " + std::to_string(n));
  }
  return std::size_t{1} << n;
}

void check_targets(int n, std::span<const int> targets) {
  std::set<int> seen;
  for (int t : targets) {
    if (t < 1 || t > n) {
      throw InvalidArgument("target qubit " + std::to_string(t) + " outside 1.." + std::to_string(n));
    }
    if (!seen.insert(t).second) throw InvalidArgument("duplicate target qubit " + std::to_string(t));
  }
}

// Bit mask of a 1-based qubit inside an n-qubit index.
std::size_t mask_of(int n, int qubit) { return std::size_t{1} << (n - qubit); }

}  // namespace

QubitState::QubitState(int n) : n_(n), amps_(dim_of(n)) {}

QubitState::QubitState(int n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (amps_.size() != dim_of(n)) {
    throw InvalidArgument("state on " + std::to_string(n) + " qubits needs " + std::to_string(dim_of(n)) +
                          " amplitudes, got " + std::to_string(amps_.size()));
  }
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InvalidArgument("non-finite amplitude");
  }
}

double QubitState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double QubitState::norm() const { return std::sqrt(norm_squared()); }

bool QubitState::is_zero() const {
  return std::all_of(amps_.begin(), amps_.end(), [](cplx a) { return a == cplx{}; });
}

QubitState QubitState::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw InvalidArgument("cannot normalize the zero state");
  QubitState out = *this;
  for (auto& a : out.amps_) a /= nrm;
  return out;
}

std::vector<double> QubitState::probabilities() const {
  const double total = norm_squared();
  if (total == 0.0) throw InvalidArgument("zero state has no probabilities");
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [&](cplx a) { return std::norm(a) / total; });
  return p;
}

QubitState& QubitState::operator+=(const QubitState& other) {
  if (other.n_ != n_) throw InvalidArgument("cannot add states of different qubit counts");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

QubitState& QubitState::operator*=(cplx s) {
  for (auto& a : amps_) a *= s;
  return *this;
}

std::size_t basis_index(std::string_view bits) {
  if (bits.empty() || static_cast<int>(bits.size()) > kMaxQubits) throw InvalidArgument("bitstring length out of range");
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("bitstring may only contain 0 and 1: '" + std::string(bits) + "'");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

std::string basis_label(std::size_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 1; q <= n; ++q) s[q - 1] = qubit_bit(index, n, q) ? '1' : '0';
  return s;
}

cplx inner_product(const QubitState& a, const QubitState& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("inner product of states with different qubit counts");
  cplx s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

QubitState make_basis_state(int n, std::string_view bits) {
  if (static_cast<int>(bits.size()) != n) {
    throw InvalidArgument("bitstring '" + std::string(bits) + "' does not have length " + std::to_string(n));
  }
  QubitState s(n);
  s[basis_index(bits)] = 1.0;
  return s;
}

NamedState parse_named_state(std::string_view name) {
  if (name == "GHZ") return NamedState::GHZ;
  if (name == "W") return NamedState::W;
  if (name == "Bell00+") return NamedState::Bell00Plus;
  if (name == "Bell00-") return NamedState::Bell00Minus;
  if (name == "Bell01+") return NamedState::Bell01Plus;
  if (name == "Bell01-") return NamedState::Bell01Minus;
  throw InvalidArgument("unknown named state '" + std::string(name) + "'");
}

QubitState make_named_state(NamedState name, int n) {
  QubitState s(n);
  const std::size_t last = s.dim() - 1;
  switch (name) {
    case NamedState::GHZ:
      if (n < 2) throw InvalidArgument("GHZ needs at least 2 qubits");
      s[0] = 1.0;
      s[last] = 1.0;
      break;
    case NamedState::W:
      if (n < 2) throw InvalidArgument("W needs at least 2 qubits");
      for (int q = 1; q <= n; ++q) s[mask_of(n, q)] = 1.0;
      break;
    case NamedState::Bell00Plus:
    case NamedState::Bell00Minus:
      if (n != 2) throw InvalidArgument("Bell states are 2-qubit states");
      s[0] = 1.0;
      s[3] = name == NamedState::Bell00Plus ? 1.0 : -1.0;
      break;
    case NamedState::Bell01Plus:
    case NamedState::Bell01Minus:
      if (n != 2) throw InvalidArgument("Bell states are 2-qubit states");
      s[1] = 1.0;
      s[2] = name == NamedState::Bell01Plus ? 1.0 : -1.0;
      break;
  }
  return s;
}

QubitState single_qubit(cplx alpha, cplx beta) { return QubitState(1, {alpha, beta}); }

QubitState tensor(const QubitState& a, const QubitState& b) {
  QubitState out(a.num_qubits() + b.num_qubits());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gates

Gate::Gate(int arity, std::vector<cplx> matrix, std::string label)
    : arity_(arity), matrix_(std::move(matrix)), label_(std::move(label)) {
  if (arity_ != 1 && arity_ != 2) throw InvalidArgument("gate arity must be 1 or 2");
  const int dim = 1 << arity_;
  if (static_cast<int>(matrix_.size()) != dim * dim) throw InvalidArgument("gate matrix has wrong size");
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      cplx s{};
      for (int k = 0; k < dim; ++k) s += std::conj(at(k, r)) * at(k, c);
      if (std::abs(s - (r == c ? 1.0 : 0.0)) > kUnitaryTol) throw InvalidArgument("gate " + label_ + " is not unitary");
    }
  }
}

Gate Gate::adjoint() const {
  const int dim = 1 << arity_;
  std::vector<cplx> m(matrix_.size());
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m[r * dim + c] = std::conj(at(c, r));
  }
  return Gate(arity_, std::move(m), label_ + "^dag");
}

Gate Gate::I() { return Gate(1, {1, 0, 0, 1}, "I"); }
Gate Gate::X() { return Gate(1, {0, 1, 1, 0}, "X"); }
Gate Gate::Y() { return Gate(1, {0, cplx(0, -1), cplx(0, 1), 0}, "Y"); }
Gate Gate::Z() { return Gate(1, {1, 0, 0, -1}, "Z"); }
Gate Gate::H() {
  const double r = 1.0 / std::numbers::sqrt2;
  return Gate(1, {r, r, r, -r}, "H");
}
Gate Gate::S() { return Gate(1, {1, 0, 0, cplx(0, 1)}, "S"); }
Gate Gate::T() { return Gate(1, {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)}, "T"); }
Gate Gate::SqrtX() {
  const cplx p(0.5, 0.5), m(0.5, -0.5);
  return Gate(1, {p, m, m, p}, "SX");
}
Gate Gate::Phase(double phi) { return Gate(1, {1, 0, 0, std::polar(1.0, phi)}, "P"); }
Gate Gate::CNOT() { return Gate(2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}, "CNOT"); }
Gate Gate::CZ() { return Gate(2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}, "CZ"); }
Gate Gate::CPhase(double phi) {
  return Gate(2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, std::polar(1.0, phi)}, "CPHASE");
}
Gate Gate::SWAP() { return Gate(2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}, "SWAP"); }

Gate Gate::by_name(std::string_view name, double param) {
  if (name == "I") return I();
  if (name == "X") return X();
  if (name == "Y") return Y();
  if (name == "Z") return Z();
  if (name == "H") return H();
  if (name == "S") return S();
  if (name == "T") return T();
  if (name == "SX" || name == "SQRTX") return SqrtX();
  if (name == "P" || name == "PHASE") return Phase(param);
  if (name == "CNOT" || name == "CX") return CNOT();
  if (name == "CZ") return CZ();
  if (name == "CPHASE" || name == "CP") return CPhase(param);
  if (name == "SWAP") return SWAP();
  throw InvalidArgument("unknown gate '" + std::string(name) + "'");
}

QubitState apply_gate(const QubitState& state, const Gate& g, std::span<const int> targets) {
  const int n = state.num_qubits();
  if (static_cast<int>(targets.size()) != g.arity()) {
    throw InvalidArgument("gate " + g.label() + " expects " + std::to_string(g.arity()) + " target(s), got " +
                          std::to_string(targets.size()));
  }
  check_targets(n, targets);

  QubitState out = state;
  auto amps = out.mutable_amplitudes();
  if (g.arity() == 1) {
    const std::size_t m = mask_of(n, targets[0]);
    for (std::size_t i = 0; i < state.dim(); ++i) {
      if (i & m) continue;
      const cplx a0 = state[i], a1 = state[i | m];
      amps[i] = g.at(0, 0) * a0 + g.at(0, 1) * a1;
      amps[i | m] = g.at(1, 0) * a0 + g.at(1, 1) * a1;
    }
  } else {
    const std::size_t hi = mask_of(n, targets[0]);
    const std::size_t lo = mask_of(n, targets[1]);
    for (std::size_t i = 0; i < state.dim(); ++i) {
      if (i & (hi | lo)) continue;
      const std::array<std::size_t, 4> idx{i, i | lo, i | hi, i | hi | lo};
      std::array<cplx, 4> in{};
      for (int k = 0; k < 4; ++k) in[k] = state[idx[k]];
      for (int r = 0; r < 4; ++r) {
        cplx s{};
        for (int c = 0; c < 4; ++c) s += g.at(r, c) * in[c];
        amps[idx[r]] = s;
      }
    }
  }
  return out;
}

QubitState apply_gate(const QubitState& state, const Gate& g, std::initializer_list<int> targets) {
  return apply_gate(state, g, std::span<const int>(targets.begin(), targets.size()));
}

namespace {

QubitState register_dft(const QubitState& state, std::span<const int> reg, double sign) {
  const int n = state.num_qubits();
  if (reg.empty()) throw InvalidArgument("QFT register is empty");
  check_targets(n, reg);
  const int k = static_cast<int>(reg.size());
  const std::size_t size = std::size_t{1} << k;

  std::vector<std::size_t> masks(static_cast<std::size_t>(k));
  std::size_t reg_mask = 0;
  for (int b = 0; b < k; ++b) {
    masks[b] = mask_of(n, reg[b]);
    reg_mask |= masks[b];
  }
  // Basis offset of register value x (reg[0] is its MSB).
  std::vector<std::size_t> offset(size, 0);
  for (std::size_t x = 0; x < size; ++x) {
    for (int b = 0; b < k; ++b) {
      if ((x >> (k - 1 - b)) & 1U) offset[x] |= masks[b];
    }
  }
  std::vector<cplx> roots(size);
  for (std::size_t j = 0; j < size; ++j) {
    roots[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(size));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));

  QubitState out(n);
  std::vector<cplx> in(size);
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & reg_mask) continue;
    for (std::size_t x = 0; x < size; ++x) in[x] = state[base | offset[x]];
    for (std::size_t y = 0; y < size; ++y) {
      cplx s{};
      for (std::size_t x = 0; x < size; ++x) s += roots[(x * y) % size] * in[x];
      out[base | offset[y]] = s * scale;
    }
  }
  return out;
}

std::vector<int> all_qubits(int n) {
  std::vector<int> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[i] = i + 1;
  return q;
}

}  // namespace

QubitState qft(const QubitState& state, std::span<const int> register_qubits) {
  return register_dft(state, register_qubits, +1.0);
}
QubitState inverse_qft(const QubitState& state, std::span<const int> register_qubits) {
  return register_dft(state, register_qubits, -1.0);
}
QubitState qft(const QubitState& state) { return qft(state, all_qubits(state.num_qubits())); }
QubitState inverse_qft(const QubitState& state) { return inverse_qft(state, all_qubits(state.num_qubits())); }

OracleTable::OracleTable(int in_bits, int out_bits, std::vector<std::uint32_t> vals)
    : input_bits(in_bits), output_bits(out_bits), values(std::move(vals)) {
  if (input_bits < 1 || input_bits > 16) throw InvalidArgument("oracle input width out of range");
  if (output_bits < 1 || output_bits > 16) throw InvalidArgument("oracle output width out of range");
  if (values.size() != (std::size_t{1} << input_bits)) {
    throw InvalidArgument("oracle table needs " + std::to_string(std::size_t{1} << input_bits) + " entries, got " +
                          std::to_string(values.size()));
  }
  const std::uint32_t limit = 1U << output_bits;
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] >= limit) {
      throw InvalidArgument("oracle value f(" + std::to_string(x) + ") = " + std::to_string(values[x]) +
                            " does not fit in " + std::to_string(output_bits) + " output bit(s)");
    }
  }
}

QubitState apply_oracle(const QubitState& state, const OracleTable& f, int first_input, int first_output) {
  const int n = state.num_qubits();
  const int k = f.input_bits, m = f.output_bits;
  std::vector<int> qubits;
  for (int i = 0; i < k; ++i) qubits.push_back(first_input + i);
  for (int i = 0; i < m; ++i) qubits.push_back(first_output + i);
  check_targets(n, qubits);

  QubitState out(n);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    std::size_t x = 0;
    for (int b = 0; b < k; ++b) x = (x << 1) | static_cast<std::size_t>(qubit_bit(i, n, first_input + b));
    const std::uint32_t fx = f(x);
    std::size_t j = i;
    for (int b = 0; b < m; ++b) {
      if ((fx >> (m - 1 - b)) & 1U) j ^= mask_of(n, first_output + b);
    }
    out[j] += state[i];
  }
  return out;
}

}  // namespace qflow
