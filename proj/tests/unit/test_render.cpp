#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "qflow/render.hpp"
#include "test_support.hpp"

using namespace qflow;

namespace {

int count_of(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

TEST_CASE("grid sampling") {
  const auto g = sample_grid(LaurentField::monomial(1), {-1, 1, -1, 1}, 3, 3);
  REQUIRE(g.samples.size() == 9);
  const auto& mid = g.at(1, 1);
  CHECK(mid.x == 0.0);
  CHECK(mid.y == 0.0);
  CHECK(mid.u == 0.0);
  CHECK(mid.v == 0.0);

  const auto inv = sample_grid(LaurentField::monomial(-1), {-1, 1, -1, 1}, 3, 3);
  CHECK(inv.at(2, 1).u == doctest::Approx(1.0));
  CHECK(inv.at(2, 1).v == doctest::Approx(0.0));
  CHECK(inv.at(1, 1).clipped);
  CHECK(inv.at(1, 1).u == 0.0);

  // Clipping keeps the direction.
  const auto big = sample_grid(cplx(30.0, 40.0) * LaurentField::monomial(0), {-1, 1, -1, 1}, 2, 2, 10.0);
  CHECK(big.samples[0].clipped);
  CHECK(big.samples[0].u == doctest::Approx(6.0));
  CHECK(big.samples[0].v == doctest::Approx(-8.0));

  CHECK_THROWS_AS(sample_grid(LaurentField::monomial(1), {1, 1, -1, 1}, 3, 3), InvalidArgument);
  CHECK_THROWS_AS(sample_grid(LaurentField::monomial(1), {-1, 1, -1, 1}, 1, 3), InvalidArgument);
}

TEST_CASE("Bell field minima sit at the roots") {
  const Field bell = charge_map(make_named_state(NamedState::Bell00Plus, 2).normalized(), 3);
  const auto g = sample_grid(bell, {}, 64, 64, 1e300);
  const auto roots = extract_defects(bell).zeros;
  int minima = 0;
  for (int iy = 1; iy < 63; ++iy) {
    for (int ix = 1; ix < 63; ++ix) {
      const double m = std::hypot(g.at(ix, iy).u, g.at(ix, iy).v);
      bool is_min = true;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          is_min = is_min && m < std::hypot(g.at(ix + dx, iy + dy).u, g.at(ix + dx, iy + dy).v);
        }
      }
      if (!is_min) continue;
      // Exclude the pole at the origin, where samples are clipped to zero.
      if (g.at(ix, iy).clipped) continue;
      ++minima;
      const cplx here(g.at(ix, iy).x, g.at(ix, iy).y);
      double nearest = 1e9;
      for (const auto& r : roots) nearest = std::min(nearest, std::abs(r.location - here));
      CHECK(nearest < 0.1);
    }
  }
  CHECK(minima == 8);
}

TEST_CASE("CSV round trip is exact") {
  std::mt19937_64 rng(4);
  const auto cfg = default_position_config(3);
  const Field f = map_state(qflow::testing::random_state(3, rng), cfg);
  const auto g = sample_grid(f, {-2.1, 1.7, -1.3, 2.2}, 17, 11);
  std::stringstream ss;
  write_grid_csv(ss, g);
  const auto back = read_grid_csv(ss);
  REQUIRE(back.nx == 17);
  REQUIRE(back.ny == 11);
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    CHECK(back.samples[i].x == g.samples[i].x);
    CHECK(back.samples[i].y == g.samples[i].y);
    CHECK(back.samples[i].u == g.samples[i].u);
    CHECK(back.samples[i].v == g.samples[i].v);
    CHECK(back.samples[i].clipped == g.samples[i].clipped);
  }

  std::stringstream bad("x,y,u,v,clipped\n1,2,3\n");
  CHECK_THROWS_AS(read_grid_csv(bad), InvalidArgument);
  std::stringstream bad2("a,b\n");
  CHECK_THROWS_AS(read_grid_csv(bad2), InvalidArgument);
}

TEST_CASE("SVG markers") {
  const Field zero_state = charge_map(make_basis_state(1, "0"), 1);
  const auto d = extract_defects(zero_state);
  const auto svg = render_svg(sample_grid(zero_state, {}, 8, 8), d);
  CHECK(count_of(svg, "class=\"pole\"") == 1);
  CHECK(count_of(svg, "<circle") == 0);
  CHECK(count_of(svg, "class=\"scale-bar\"") == 1);

  const auto cfg = default_position_config(3);
  const Field f = map_state(qft(make_basis_state(3, "000")), cfg);
  const auto defects = extract_defects(f);
  const auto halos = detect_halos(defects, cfg);
  const auto g = sample_grid(f, {}, 16, 16);
  const auto out = render_svg(g, defects, &halos);
  CHECK(count_of(out, "class=\"pole\"") == 3);
  CHECK(count_of(out, "<circle") == 18);
  for (int j = 0; j < 3; ++j) CHECK(count_of(out, "halo-" + std::to_string(j) + "\"") == 6);
  CHECK(out == render_svg(g, defects, &halos));

  const auto empty = render_svg(FieldGrid{}, defects);
  CHECK(empty.find("</svg>") != std::string::npos);
  CHECK(count_of(empty, "class=\"pole\"") == 3);
}

TEST_CASE("stereographic projection") {
  const Field constant = LaurentField::monomial(0);
  const auto south = project_vector(constant, std::numbers::pi, 0.0);
  CHECK(south.U[0] == doctest::Approx(2.0));
  CHECK(std::abs(south.U[1]) < 1e-15);
  CHECK(std::abs(south.U[2]) < 1e-15);
  CHECK_THROWS_AS(project_vector(constant, 0.0, 0.0), InvalidArgument);

  std::mt19937_64 rng(12);
  const auto cfg = default_position_config(3);
  const Field f = map_state(qflow::testing::random_state(3, rng), cfg);
  const auto samples = stereographic_project(f, 24, 24);
  CHECK(samples.size() >= 24 * 23);
  for (const auto& s : samples) {
    const double mag = std::sqrt(dot(s.U, s.U));
    CHECK(std::abs(dot(s.U, s.position)) <= 1e-9 * std::max(1.0, mag));
    CHECK(std::abs(dot(s.position, s.position) - 1.0) < 1e-14);
  }
}

TEST_CASE("north pole classification") {
  const auto cfg = default_position_config(3);
  for (std::size_t i = 0; i < 8; ++i) {
    QubitState s(3);
    s[i] = 1.0;
    const auto rep = north_pole_classify(map_state(s, cfg));
    const int ones = std::popcount(i);
    CHECK(rep.asymptotic_degree == 6 * ones - 9);
    CHECK(std::abs(rep.fitted_exponent - rep.expected_exponent()) < 0.1);
    CHECK(rep.behavior == (ones >= 2 ? NorthPoleBehavior::Diverges : NorthPoleBehavior::Vanishes));
  }
  const auto z2 = north_pole_classify(LaurentField::monomial(2));
  CHECK(z2.behavior == NorthPoleBehavior::BoundedDiscontinuous);
  CHECK(std::abs(z2.fitted_exponent) < 0.1);
  for (std::size_t i = 0; i < 8; ++i) {
    QubitState s(3);
    s[i] = 1.0;
    CHECK(north_pole_classify(map_state(qft(s), cfg)).behavior == NorthPoleBehavior::Diverges);
  }
}
