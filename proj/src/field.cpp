#include "qflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qflow/independence.hpp"

namespace qflow {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvalidArgument("charge exponent overflows 64 bits");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvalidArgument("charge exponent overflows 64 bits");
  return r;
}

// sum_j digit_j * d^(offset + j - 1) with digits in {-1, 0, 1}.
std::int64_t weighted_digits(const std::vector<int>& digits, int d, int offset) {
  if (d < 1) throw InvalidArgument("charge d must be at least 1");
  std::int64_t scale = 1;
  for (int i = 0; i < offset; ++i) scale = checked_mul(scale, d);
  std::int64_t c = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    c = checked_add(c, checked_mul(digits[j], scale));
    if (j + 1 < digits.size()) scale = checked_mul(scale, d);
  }
  return c;
}

std::vector<int> signed_bits(std::string_view bits) {
  std::vector<int> digits;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw InvalidArgument("bitstring may only contain 0 and 1: '" + std::string(bits) + "'");
    digits.push_back(ch == '1' ? 1 : -1);
  }
  return digits;
}

void check_distinct(const std::vector<cplx>& defects) {
  for (std::size_t i = 0; i < defects.size(); ++i) {
    for (std::size_t j = i + 1; j < defects.size(); ++j) {
      if (defects[i] == defects[j]) throw InvalidArgument("basis defect positions must be distinct");
    }
  }
}

int default_charge(int n) { return n <= 2 ? 1 : 3; }

// z^e by repeated squaring; negative e inverts.
cplx ipow(cplx z, std::int64_t e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  cplx result = 1.0, base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace

RepresentationConfig RepresentationConfig::charge(int n, int d) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  if (d < 1) throw InvalidArgument("charge d must be at least 1");
  return {Representation::Charge, n, d, {}};
}

RepresentationConfig RepresentationConfig::position(std::vector<cplx> defects, int d) {
  if (defects.empty()) throw InvalidArgument("position representation needs at least one basis defect");
  if (d < 1) throw InvalidArgument("charge d must be at least 1");
  check_distinct(defects);
  const int n = static_cast<int>(defects.size());
  return {Representation::Position, n, d, std::move(defects)};
}

std::vector<cplx> default_defects(int n) {
  const cplx i(0.0, 1.0);
  switch (n) {
    case 1: return {0.0};
    case 2: return {-1.0, 1.0};
    case 3: return {-1.0, i, 1.0};
    case 4: return {-1.0, i, 1.0, -i};
    default: break;
  }
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  std::vector<cplx> a;
  for (int j = 0; j < n; ++j) a.push_back(std::polar(1.0, std::numbers::pi - 2.0 * std::numbers::pi * j / n));
  return a;
}

RepresentationConfig default_position_config(int n, std::optional<int> d) {
  const bool validated = n >= 1 && n <= 4;
  if (!d) {
    if (!validated) throw InvalidArgument("no validated default charge for n = " + std::to_string(n) + "; pass d explicitly");
    return RepresentationConfig::position(default_defects(n), default_charge(n));
  }
  auto cfg = RepresentationConfig::position(default_defects(n), *d);
  if (validated && *d == default_charge(n)) return cfg;
  const auto report = check_linear_independence(basis_fields(cfg));
  if (!report.independent) {
    throw InvalidArgument("basis fields for n = " + std::to_string(n) + ", d = " + std::to_string(*d) +
                          " are linearly dependent (rank " + std::to_string(report.rank) + " of " +
                          std::to_string(report.count) + ")");
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// LaurentField

LaurentField::LaurentField(std::map<std::int64_t, cplx> terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

LaurentField LaurentField::monomial(std::int64_t exponent, cplx coeff) {
  LaurentField f;
  f.add_term(exponent, coeff);
  return f;
}

std::int64_t LaurentField::min_exponent() const {
  if (terms_.empty()) throw InvalidArgument("zero Laurent field has no exponents");
  return terms_.begin()->first;
}

std::int64_t LaurentField::max_exponent() const {
  if (terms_.empty()) throw InvalidArgument("zero Laurent field has no exponents");
  return terms_.rbegin()->first;
}

std::int64_t LaurentField::max_abs_exponent() const {
  if (terms_.empty()) return 0;
  return std::max(std::abs(min_exponent()), std::abs(max_exponent()));
}

void LaurentField::add_term(std::int64_t exponent, cplx coeff) {
  if (coeff == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

LaurentField& LaurentField::operator+=(const LaurentField& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentField operator*(const LaurentField& a, const LaurentField& b) {
  LaurentField out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(checked_add(ea, eb), ca * cb);
  }
  return out;
}

LaurentField operator*(cplx s, const LaurentField& f) {
  LaurentField out;
  for (const auto& [e, c] : f.terms_) out.add_term(e, s * c);
  return out;
}

// ---------------------------------------------------------------------------
// Mappings

std::int64_t exponent(std::string_view bits, int d) { return weighted_digits(signed_bits(bits), d, 0); }

std::int64_t ternary_exponent(std::string_view tau, int d) {
  if (tau.empty()) throw InvalidArgument("empty ternary string");
  std::vector<int> digits;
  bool all_ones = true;
  for (char ch : tau) {
    if (ch < '0' || ch > '2') throw InvalidArgument("ternary string may only contain 0, 1, 2: '" + std::string(tau) + "'");
    digits.push_back(ch - '1');
    all_ones = all_ones && ch == '1';
  }
  if (all_ones) throw InvalidArgument("the all-ones ternary string selects no qubits");
  return weighted_digits(digits, d, 0);
}

std::vector<LaurentField> variable_particle_fields(int n, int d) {
  if (n < 1 || n > 12) throw InvalidArgument("variable-particle family supports 1 <= n <= 12");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<LaurentField> fields;
  fields.reserve(total - 1);
  std::string tau(static_cast<std::size_t>(n), '0');
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int j = n - 1; j >= 0; --j) {
      tau[j] = static_cast<char>('0' + c % 3);
      c /= 3;
    }
    if (tau.find_first_not_of('1') == std::string::npos) continue;
    fields.push_back(LaurentField::monomial(ternary_exponent(tau, d)));
  }
  return fields;
}

LaurentField charge_map(const QubitState& state, int d, int first_qubit) {
  if (first_qubit < 1) throw InvalidArgument("first qubit label must be positive");
  const int n = state.num_qubits();
  LaurentField out;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (state[i] == cplx{}) continue;
    out.add_term(weighted_digits(signed_bits(basis_label(i, n)), d, first_qubit - 1), state[i]);
  }
  return out;
}

RationalField position_map(const QubitState& state, const RepresentationConfig& cfg) {
  if (cfg.kind != Representation::Position) throw InvalidArgument("position_map needs a position-representation config");
  const int n = state.num_qubits();
  if (cfg.n != n || static_cast<int>(cfg.defects.size()) != n) {
    throw InvalidArgument("config has " + std::to_string(cfg.defects.size()) + " basis defects but the state has " +
                          std::to_string(n) + " qubits");
  }
  std::vector<Polynomial> raised;
  for (const auto& a : cfg.defects) raised.push_back(Polynomial::power_of_linear(a, 2 * cfg.d));

  Polynomial numerator;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (state[i] == cplx{}) continue;
    Polynomial term = Polynomial::constant(1.0);
    for (int q = 1; q <= n; ++q) {
      if (qubit_bit(i, n, q)) term = term * raised[q - 1];
    }
    numerator += state[i] * term;
  }
  return {std::move(numerator), cfg.defects, cfg.d};
}

Field map_state(const QubitState& state, const RepresentationConfig& cfg) {
  if (cfg.kind == Representation::Charge) {
    if (cfg.n != state.num_qubits()) throw InvalidArgument("config qubit count does not match the state");
    return charge_map(state, cfg.d);
  }
  return position_map(state, cfg);
}

std::vector<Field> basis_fields(const RepresentationConfig& cfg) {
  std::vector<Field> out;
  const std::size_t dim = std::size_t{1} << cfg.n;
  for (std::size_t i = 0; i < dim; ++i) {
    QubitState s(cfg.n);
    s[i] = 1.0;
    out.push_back(map_state(s, cfg));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

cplx eval_value(const Field& field, cplx z) {
  if (const auto* lf = std::get_if<LaurentField>(&field)) {
    cplx s{};
    for (const auto& [e, c] : lf->terms()) {
      if (e < 0 && z == cplx{}) throw PoleError("field evaluated at its pole z = 0", 0.0);
      s += c * ipow(z, e);
    }
    return s;
  }
  const auto& rf = std::get<RationalField>(field);
  cplx den = 1.0;
  for (const auto& a : rf.defects) {
    if (z == a) throw PoleError("field evaluated at a basis defect", a);
    den *= ipow(z - a, rf.d);
  }
  return rf.numerator(z) / den;
}

FieldValue eval_field(const Field& field, cplx z) {
  const cplx f = eval_value(field, z);
  return {f, f.real(), -f.imag()};
}

std::vector<cplx> pole_locations(const Field& field) {
  if (const auto* lf = std::get_if<LaurentField>(&field)) {
    if (!lf->is_zero() && lf->min_exponent() < 0) return {0.0};
    return {};
  }
  return std::get<RationalField>(field).defects;
}

bool is_zero_field(const Field& field) {
  if (const auto* lf = std::get_if<LaurentField>(&field)) return lf->is_zero();
  return std::get<RationalField>(field).numerator.is_zero();
}

std::vector<cplx> derivative_eval(const Field& field, cplx alpha, int max_order) {
  if (max_order < 0) throw InvalidArgument("derivative order must be non-negative");
  const std::size_t m = static_cast<std::size_t>(max_order) + 1;
  std::vector<cplx> out(m);

  if (const auto* lf = std::get_if<LaurentField>(&field)) {
    for (const auto& [e, c] : lf->terms()) {
      if (e < 0 && alpha == cplx{}) throw PoleError("derivative evaluated at the pole z = 0", 0.0);
      double falling = 1.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (falling == 0.0) break;
        out[k] += c * falling * ipow(alpha, e - static_cast<std::int64_t>(k));
        falling *= static_cast<double>(e) - static_cast<double>(k);
      }
    }
    return out;
  }

  // Taylor series in t = z - alpha: numerator shift times each (alpha - a + t)^(-d).
  const auto& rf = std::get<RationalField>(field);
  std::vector<cplx> series(m);
  const Polynomial shifted = rf.numerator.taylor_shift(alpha);
  for (std::size_t k = 0; k < m; ++k) series[k] = shifted.coeff(static_cast<int>(k));
  for (const auto& a : rf.defects) {
    if (alpha == a) throw PoleError("derivative evaluated at a basis defect", a);
    const cplx w = alpha - a;
    std::vector<cplx> factor(m);
    // (w + t)^(-d) = sum_k (-1)^k C(d+k-1, k) w^(-d-k) t^k
    cplx coef = ipow(w, -rf.d);
    for (std::size_t k = 0; k < m; ++k) {
      factor[k] = coef;
      coef *= -static_cast<double>(rf.d + static_cast<int>(k)) / static_cast<double>(k + 1) / w;
    }
    std::vector<cplx> product(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; i + j < m; ++j) product[i + j] += series[i] * factor[j];
    }
    series = std::move(product);
  }
  double factorial = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    out[k] = series[k] * factorial;
  }
  return out;
}

int PolynomialFraction::denominator_degree() const {
  int deg = 0;
  for (const auto& [loc, p] : denominator) deg += p;
  return deg;
}

PolynomialFraction as_fraction(const Field& field) {
  if (const auto* lf = std::get_if<LaurentField>(&field)) {
    if (lf->is_zero()) return {};
    const std::int64_t shift = std::max<std::int64_t>(0, -lf->min_exponent());
    const std::int64_t top = lf->max_exponent() + shift;
    if (top > 1'000'000) throw InvalidArgument("Laurent field too wide to expand as a polynomial");
    std::vector<cplx> coeffs(static_cast<std::size_t>(top) + 1);
    for (const auto& [e, c] : lf->terms()) coeffs[static_cast<std::size_t>(e + shift)] = c;
    PolynomialFraction out{Polynomial(std::move(coeffs)), {}};
    if (shift > 0) out.denominator.push_back({0.0, static_cast<int>(shift)});
    return out;
  }
  const auto& rf = std::get<RationalField>(field);
  PolynomialFraction out{rf.numerator, {}};
  for (const auto& a : rf.defects) out.denominator.push_back({a, rf.d});
  return out;
}

}  // namespace qflow
