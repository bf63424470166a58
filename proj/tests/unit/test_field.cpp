#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <doctest.h>

#include "qflow/field.hpp"
#include "test_support.hpp"

using namespace qflow;
using qflow::testing::random_point;
using qflow::testing::random_state;

namespace {

std::string bits_of(std::size_t idx, int n) { return basis_label(idx, n); }

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("charge exponents") {
  CHECK(exponent("01", 3) == 2);
  CHECK(exponent("00", 3) == -4);
  CHECK(exponent("10", 3) == -2);
  CHECK(exponent("11", 3) == 4);
  CHECK(exponent("10", 2) == -1);
  CHECK(exponent("0", 5) == -1);
  CHECK_THROWS_AS(exponent("2", 3), InvalidArgument);
  CHECK_THROWS_AS(exponent("0", 0), InvalidArgument);
}

TEST_CASE("charge exponents are injective for d = 2, 3") {
  for (int d : {2, 3}) {
    for (int n = 1; n <= 10; ++n) {
      std::set<std::int64_t> seen;
      for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) seen.insert(exponent(bits_of(i, n), d));
      CHECK(seen.size() == (std::size_t{1} << n));
    }
  }
}

TEST_CASE("ternary exponents") {
  CHECK(ternary_exponent("21", 3) == 1);
  CHECK(ternary_exponent("000", 3) == -13);
  CHECK(ternary_exponent("0", 3) == -1);
  CHECK_THROWS_AS(ternary_exponent("11", 3), InvalidArgument);
  CHECK_THROWS_AS(ternary_exponent("13", 3), InvalidArgument);
  // d = 2 collision: two-qubit |10> and one-qubit |0> (qubit 2 absent) share z^-1.
  CHECK(ternary_exponent("20", 2) == exponent("10", 2));
  CHECK(ternary_exponent("01", 2) == -1);
  for (int n = 1; n <= 6; ++n) {
    const auto fams = variable_particle_fields(n, 3);
    std::set<std::int64_t> seen;
    for (const auto& f : fams) seen.insert(f.min_exponent());
    CHECK(seen.size() == fams.size());
  }
}

TEST_CASE("charge map examples") {
  const auto bell = charge_map(make_named_state(NamedState::Bell00Plus, 2).normalized(), 3);
  REQUIRE(bell.terms().size() == 2);
  CHECK(std::abs(bell.terms().at(-4) - 1.0 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(bell.terms().at(4) - 1.0 / std::numbers::sqrt2) < 1e-15);

  const auto zero = charge_map(make_basis_state(1, "0"), 7);
  CHECK(zero.terms().size() == 1);
  CHECK(zero.terms().count(-1) == 1);

  CHECK(charge_map(QubitState(2), 3).is_zero());

  // Bell field vanishes on the 8th roots of -1.
  const Field bf = bell;
  CHECK(std::abs(eval_value(bf, std::polar(1.0, std::numbers::pi / 8))) < 1e-14);
}

TEST_CASE("evaluation and velocity") {
  const Field inv = LaurentField::monomial(-1);
  const auto fv = eval_field(inv, cplx(0, 1));
  CHECK(std::abs(fv.f - cplx(0, -1)) < 1e-15);
  CHECK(fv.u == doctest::Approx(0.0));
  CHECK(fv.v == doctest::Approx(1.0));
  CHECK_THROWS_AS(eval_field(inv, 0.0), PoleError);

  const auto cfg = RepresentationConfig::position({-1.0, 1.0}, 1);
  const Field f00 = position_map(make_basis_state(2, "00"), cfg);
  CHECK(std::abs(eval_value(f00, 0.0) - cplx(-1.0)) < 1e-15);
  try {
    eval_field(f00, 1.0);
    FAIL("expected a pole error");
  } catch (const PoleError& e) {
    CHECK(e.location() == cplx(1.0));
  }
}

TEST_CASE("position map examples") {
  const auto cfg = RepresentationConfig::position({-1.0, 1.0}, 1);
  CHECK(position_map(make_basis_state(2, "00"), cfg).numerator.coeffs() == std::vector<cplx>{1.0});
  const auto f11 = position_map(make_basis_state(2, "11"), cfg);
  // (z+1)^2 (z-1)^2 = z^4 - 2z^2 + 1
  CHECK(f11.numerator.coeffs() == std::vector<cplx>{1.0, 0.0, -2.0, 0.0, 1.0});
  const auto sep = position_map(tensor(QubitState(1, {1.0, 1.0}), make_basis_state(1, "0")), cfg);
  CHECK(sep.numerator.coeffs() == std::vector<cplx>{2.0, 2.0, 1.0});
  CHECK(sep.denominator_degree() == 2);
  CHECK_THROWS_AS(position_map(make_basis_state(3, "000"), cfg), InvalidArgument);
}

TEST_CASE("default configs") {
  CHECK(default_defects(2) == std::vector<cplx>{-1.0, 1.0});
  CHECK(default_defects(4) == std::vector<cplx>{-1.0, cplx(0, 1), 1.0, cplx(0, -1)});
  CHECK(default_position_config(2).d == 1);
  CHECK(default_position_config(3).d == 3);
  CHECK(default_position_config(4).d == 3);
  CHECK_THROWS_AS(default_position_config(5), InvalidArgument);
  CHECK_THROWS_AS(default_position_config(3, 1), InvalidArgument);
  for (const auto& a : default_defects(6)) CHECK(std::abs(std::abs(a) - 1.0) < 1e-15);
}

TEST_CASE("linearity of both maps") {
  std::mt19937_64 rng(17);
  const auto cfg = default_position_config(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_state(3, rng), phi = random_state(3, rng);
    const cplx a = random_point(rng), b = random_point(rng);
    QubitState mix = psi;
    mix *= a;
    QubitState t = phi;
    t *= b;
    mix += t;
    for (int k = 0; k < 20; ++k) {
      const cplx z = random_point(rng);
      for (const auto& c : {RepresentationConfig::charge(3, 3), cfg}) {
        const cplx lhs = eval_value(map_state(mix, c), z);
        const cplx rhs = a * eval_value(map_state(psi, c), z) + b * eval_value(map_state(phi, c), z);
        CHECK(rel_err(lhs, rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("tensor products become field products") {
  std::mt19937_64 rng(23);
  const auto defects = default_defects(4);
  const auto full = RepresentationConfig::position(defects, 3);
  const auto left = RepresentationConfig::position({defects[0], defects[1]}, 3);
  const auto right = RepresentationConfig::position({defects[2], defects[3]}, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_state(2, rng), phi = random_state(2, rng);
    const auto both = tensor(psi, phi);
    for (int k = 0; k < 5; ++k) {
      const cplx z = random_point(rng);
      const cplx lhs = eval_value(map_state(both, full), z);
      const cplx rhs = eval_value(map_state(psi, left), z) * eval_value(map_state(phi, right), z);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
    // Charge: qubits 3, 4 of the product sit at scales d^2, d^3.
    const auto prod = charge_map(psi, 3) * charge_map(phi, 3, 3);
    const auto direct = charge_map(both, 3);
    REQUIRE(prod.terms().size() == direct.terms().size());
    for (const auto& [e, c] : direct.terms()) CHECK(std::abs(prod.terms().at(e) - c) < 1e-12);
  }
}

TEST_CASE("derivative evaluation") {
  const auto d3 = derivative_eval(LaurentField::monomial(3), 1.0, 3);
  CHECK(d3 == std::vector<cplx>{1.0, 3.0, 6.0, 6.0});
  const auto dinv = derivative_eval(LaurentField::monomial(-1), 2.0, 2);
  CHECK(std::abs(dinv[0] - 0.5) < 1e-15);
  CHECK(std::abs(dinv[1] + 0.25) < 1e-15);
  CHECK(std::abs(dinv[2] - 0.25) < 1e-15);
  CHECK_THROWS_AS(derivative_eval(LaurentField::monomial(-1), 0.0, 1), PoleError);

  // Finite-difference oracle on random rational fields.
  std::mt19937_64 rng(31);
  const auto cfg = default_position_config(3);
  const double h = 1e-5;
  for (int trial = 0; trial < 50; ++trial) {
    const Field f = map_state(random_state(3, rng), cfg);
    const cplx z = random_point(rng, 0.5) + cplx(0.1, -0.2);
    const cplx fd = (eval_value(f, z + h) - eval_value(f, z - h)) / (2 * h);
    const auto d = derivative_eval(f, z, 1);
    CHECK(std::abs(d[0] - eval_value(f, z)) <= 1e-12 * std::abs(d[0]) + 1e-300);
    CHECK(std::abs(d[1] - fd) <= 1e-6 * std::abs(d[1]));
  }
}

TEST_CASE("higher derivatives of a position field") {
  // Oracle: f = 1/(z+1) has D^k f = (-1)^k k! / (z+1)^(k+1).
  const RationalField f{Polynomial::constant(1.0), {-1.0}, 1};
  const cplx a(0.5, 0.25);
  const auto d = derivative_eval(f, a, 7);
  double fact = 1.0;
  for (int k = 0; k <= 7; ++k) {
    if (k > 0) fact *= k;
    const cplx want = (k % 2 ? -1.0 : 1.0) * fact / std::pow(a + 1.0, k + 1);
    CHECK(std::abs(d[k] - want) <= 1e-12 * std::abs(want));
  }
}

TEST_CASE("fraction form") {
  const auto fr = as_fraction(Field(LaurentField(std::map<std::int64_t, cplx>{{-2, 1.0}, {1, 3.0}})));
  CHECK(fr.numerator.coeffs() == std::vector<cplx>{1.0, 0.0, 0.0, 3.0});
  CHECK(fr.denominator_degree() == 2);
  CHECK(pole_locations(Field(LaurentField::monomial(2))).empty());
}
