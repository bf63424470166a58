#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qflow/polynomial.hpp"
#include "qflow/state.hpp"

namespace qflow {

enum class Representation { Charge, Position };

/// Which mapping turns states into fields.
///
/// Charge: qubit j contributes z^(-d^(j-1)) or z^(d^(j-1)).
/// Position: qubit j contributes (z - a_j)^(-d) or (z - a_j)^d.
struct RepresentationConfig {
  Representation kind = Representation::Position;
  int n = 0;
  int d = 1;
  std::vector<cplx> defects;

  static RepresentationConfig charge(int n, int d);
  /// Validates distinct defects and d >= 1, but does not check linear
  /// independence of the resulting basis fields.
  static RepresentationConfig position(std::vector<cplx> defects, int d);
};

/// Defect placements used throughout the figures: n=1 -> (0), n=2 -> (-1, 1),
/// n=3 -> (-1, i, 1), n=4 -> (-1, i, 1, -i). Larger n are spaced evenly on
/// the unit circle, clockwise from -1.
std::vector<cplx> default_defects(int n);

/// Position config with the validated defaults (d=1 for n <= 2, d=3 for n = 3, 4).
/// Any other combination needs an explicit d and is rejected unless its basis
/// fields are linearly independent.
RepresentationConfig default_position_config(int n, std::optional<int> d = std::nullopt);

/// Finite sum of integer powers, sum_c coeff_c z^c. Zero coefficients are
/// never stored.
class LaurentField {
 public:
  LaurentField() = default;
  explicit LaurentField(std::map<std::int64_t, cplx> terms);
  static LaurentField monomial(std::int64_t exponent, cplx coeff = 1.0);

  const std::map<std::int64_t, cplx>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;
  std::int64_t max_abs_exponent() const;

  void add_term(std::int64_t exponent, cplx coeff);
  LaurentField& operator+=(const LaurentField& o);
  friend LaurentField operator*(const LaurentField& a, const LaurentField& b);
  friend LaurentField operator*(cplx s, const LaurentField& f);

 private:
  std::map<std::int64_t, cplx> terms_;
};

/// numerator(z) / prod_j (z - a_j)^d, with the denominator kept factored.
struct RationalField {
  Polynomial numerator;
  std::vector<cplx> defects;
  int d = 1;

  int denominator_degree() const { return static_cast<int>(defects.size()) * d; }
};

using Field = std::variant<LaurentField, RationalField>;

/// c(s) = sum_j (2 s_j - 1) d^(j-1), qubit 1 being the lowest power.
std::int64_t exponent(std::string_view bits, int d);

/// c(t) = sum_j (t_j - 1) d^(j-1) for a ternary string; digit 1 means the
/// qubit is absent, 0/2 mean |0>/|1>. The all-ones string is rejected.
std::int64_t ternary_exponent(std::string_view tau, int d);

/// Laurent fields of every ternary string except all-ones (3^n - 1 fields).
std::vector<LaurentField> variable_particle_fields(int n, int d);

/// Charge mapping; `first_qubit` offsets the qubit labels, so the state's
/// qubit k uses the scale d^(first_qubit + k - 2).
LaurentField charge_map(const QubitState& state, int d, int first_qubit = 1);

RationalField position_map(const QubitState& state, const RepresentationConfig& cfg);

/// Maps with whichever representation `cfg` names.
Field map_state(const QubitState& state, const RepresentationConfig& cfg);

/// Images of all 2^n computational basis states, in index order.
std::vector<Field> basis_fields(const RepresentationConfig& cfg);

struct FieldValue {
  cplx f;
  /// Flow velocity (Re f*, Im f*) = (Re f, -Im f).
  double u = 0.0;
  double v = 0.0;
};

/// Throws PoleError when z coincides exactly with a pole.
FieldValue eval_field(const Field& field, cplx z);
cplx eval_value(const Field& field, cplx z);

/// Pole locations of the field as written (before any cancellation).
std::vector<cplx> pole_locations(const Field& field);

bool is_zero_field(const Field& field);

/// D^k f(alpha) for k = 0..max_order from exact Taylor coefficients.
std::vector<cplx> derivative_eval(const Field& field, cplx alpha, int max_order);

/// Numerator and denominator pair as polynomials in lowest written form
/// (no cancellation). Laurent fields become N(z)/z^m.
struct PolynomialFraction {
  Polynomial numerator;
  /// (location, power) factors of the denominator.
  std::vector<std::pair<cplx, int>> denominator;

  int denominator_degree() const;
};

PolynomialFraction as_fraction(const Field& field);

}  // namespace qflow
