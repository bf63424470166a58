// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qflow/qflow.hpp"

using namespace qflow;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

QubitState basis(int n, std::size_t idx) {
  QubitState s(n);
  s[idx] = 1.0;
  return s;
}

QubitState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  QubitState s(n);
  for (std::size_t i = 0; i < s.dim(); ++i) s[i] = cplx(g(rng), g(rng));
  return s;
}

QubitState random_product(int n, std::mt19937_64& rng) {
  QubitState s = random_state(1, rng);
  for (int q = 1; q < n; ++q) s = tensor(s, random_state(1, rng));
  return s;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double smallest_ratio(const ComplexMatrix& m) {
  const auto s = singular_values(equilibrate(m));
  return s.back() / s.front();
}

Outcome charge_exponents() {
  Outcome o;
  o.require(exponent("01", 3) == 2 && exponent("00", 3) == -4 && exponent("10", 3) == -2 && exponent("11", 3) == 4,
            "two-qubit exponents at d=3");
  for (int d : {2, 3}) {
    for (int n = 1; n <= 10; ++n) {
      std::set<std::int64_t> seen;
      for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) seen.insert(exponent(basis_label(i, n), d));
      o.require(seen.size() == (std::size_t{1} << n), "collision at d=" + std::to_string(d) + ", n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome d2_collision() {
  Outcome o;
  const auto two = charge_map(make_basis_state(2, "10"), 2);
  const auto one = charge_map(make_basis_state(1, "0"), 2);
  o.require(two.terms() == one.terms() && two.terms().count(-1) == 1, "|10> and |0> fields differ at d=2");
  o.require(ternary_exponent("20", 2) == -1 && ternary_exponent("01", 2) == -1, "ternary exponents do not collide");
  o.require(!check_linear_independence(variable_particle_fields(2, 2)).independent, "d=2 family reported independent");
  for (int n = 1; n <= 6; ++n) {
    const auto fams = variable_particle_fields(n, 3);
    const auto rep = check_linear_independence(fams);
    o.require(rep.independent && rep.rank == static_cast<int>(fams.size()),
              "d=3 family dependent at n=" + std::to_string(n));
  }
  return o;
}

Outcome position_independence() {
  Outcome o;
  const auto f2 = basis_fields(RepresentationConfig::position({-1.0, 1.0}, 1));
  const auto f4 = basis_fields(default_position_config(4));
  const auto r2 = check_linear_independence(f2);
  const auto r4 = check_linear_independence(f4);
  o.require(r2.independent, "n=2, d=1 dependent");
  o.require(r4.independent, "n=4, d=3 dependent");
  o.require(r2.singular_values.back() >= 1e-6 * r2.singular_values.front(), "n=2 coefficient gap");
  o.require(r4.singular_values.back() >= 1e-6 * r4.singular_values.front(), "n=4 coefficient gap");

  const std::vector<cplx> b2{0.0, {0, 1}, {0, 2}, {0, 3}};
  const double g2 = smallest_ratio(evaluation_matrix(f2, b2));
  o.require(g2 >= 1e-6, "evaluation matrix at (0, i, 2i, 3i): gap " + fmt(g2));
  std::vector<cplx> grid;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) grid.emplace_back(x + 0.5, y - 0.5);
  }
  const double g4 = smallest_ratio(evaluation_matrix(f4, grid));
  o.require(g4 >= 1e-6, "16-point evaluation matrix: gap " + fmt(g4));

  const auto r3 = check_linear_independence(basis_fields(RepresentationConfig::position(default_defects(3), 1)));
  o.require(!r3.independent && r3.rank < 8, "n=3, d=1 reported independent");
  o.require(necessary_charge_bound(3) == 2, "necessary bound for n=3");
  if (o.pass) o.detail = "gaps " + fmt(g2) + ", " + fmt(g4);
  return o;
}

Outcome gram_construction() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double worst_id = 0.0, worst_ip = 0.0, worst_norm = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto cfg = default_position_config(n);
    const auto ctx = build_gram(cfg);
    const ComplexMatrix g = ctx.B.adjoint() * ctx.P * ctx.B;
    worst_id = std::max(worst_id, (g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());

    for (int k = 0; k < 100; ++k) {
      const auto psi = random_state(n, rng).normalized(), phi = random_state(n, rng).normalized();
      const cplx got = inner(map_state(psi, cfg), map_state(phi, cfg), ctx);
      worst_ip = std::max(worst_ip, std::abs(got - inner_product(psi, phi)));
    }

    std::vector<CircuitOp> ops{{"H", {1}, 0.0}, {"X", {1}, 0.0}, {"Y", {1}, 0.0}, {"Z", {1}, 0.0},
                               {"SX", {1}, 0.0}, {"S", {1}, 0.0}};
    if (n >= 2) ops.push_back({"CPHASE", {1, n}, 0.7});
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) all[q] = q + 1;
    ops.push_back({"QFT", all, 0.0});
    for (int k = 0; k < 10; ++k) {
      const auto psi = random_state(n, rng).normalized();
      const double before = std::sqrt(inner(map_state(psi, cfg), map_state(psi, cfg), ctx).real());
      for (const auto& op : ops) {
        const auto out = apply_op(psi, op);
        const double after = std::sqrt(inner(map_state(out, cfg), map_state(out, cfg), ctx).real());
        worst_norm = std::max(worst_norm, std::abs(after - before));
      }
    }
  }
  o.require(worst_id < 1e-8, "B^dag P B off identity by " + fmt(worst_id));
  o.require(worst_ip < 1e-7, "inner product error " + fmt(worst_ip));
  o.require(worst_norm < 1e-7, "norm drift " + fmt(worst_norm));
  if (o.pass) o.detail = "max errors " + fmt(worst_id) + ", " + fmt(worst_ip) + ", " + fmt(worst_norm);
  return o;
}

Outcome circle_inner() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const auto cfg = RepresentationConfig::charge(n, 3);
    const auto fields = basis_fields(cfg);
    for (std::size_t a = 0; a < fields.size(); ++a) {
      for (std::size_t b = 0; b < fields.size(); ++b) {
        const auto& fa = std::get<LaurentField>(fields[a]);
        const auto& fb = std::get<LaurentField>(fields[b]);
        const cplx v = circle_inner_product(fa, fb, default_circle_nodes(fa, fb));
        worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
      }
    }
  }
  o.require(worst < 1e-12, "basis Gram error " + fmt(worst));
  const auto plus = charge_map(make_named_state(NamedState::Bell00Plus, 2).normalized(), 3);
  const auto minus = charge_map(make_named_state(NamedState::Bell00Minus, 2).normalized(), 3);
  o.require(std::abs(circle_inner_product(plus, minus)) < 1e-12, "Bell+ not orthogonal to Bell-");
  return o;
}

Outcome separability() {
  Outcome o;
  const auto cfg3 = default_position_config(3);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto v = is_separable_geometric(qft(basis(3, i)), cfg3);
    bool hexagons = v.halos.leftover_zeros.empty();
    for (const auto& h : v.halos.halos) hexagons = hexagons && h.status == HaloStatus::Regular && h.zeros.size() == 6;
    o.require(v.separable && hexagons, "QFT|" + basis_label(i, 3) + "> lacks three hexagonal halos");
  }
  o.require(!is_separable_geometric(make_named_state(NamedState::GHZ, 3), cfg3).separable, "GHZ separable");
  o.require(!is_separable_geometric(make_named_state(NamedState::W, 3), cfg3).separable, "W separable");
  const auto cfg2 = default_position_config(2);
  for (auto b : {NamedState::Bell00Plus, NamedState::Bell00Minus, NamedState::Bell01Plus, NamedState::Bell01Minus}) {
    o.require(!is_separable_geometric(make_named_state(b, 2), cfg2).separable, "Bell state separable");
  }

  std::mt19937_64 rng(31337);
  int disagreements = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 2;
    const auto cfg = default_position_config(n);
    const auto s = random_product(n, rng);
    disagreements += is_separable_geometric(s, cfg).separable != is_separable_tensor(s);
    const auto g = random_state(n, rng);
    disagreements += is_separable_geometric(g, cfg).separable != is_separable_tensor(g);
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements with the tensor oracle");
  if (o.pass) o.detail = "0 disagreements over 400 states";
  return o;
}

Outcome deutsch_jozsa_run() {
  Outcome o;
  const auto run = deutsch_jozsa(OracleTable(3, 1, {0, 0, 0, 1, 1, 1, 1, 0}));
  o.require(factorizable_qubits(run.oracle_inputs) == std::vector<int>{1}, "factorizable set is not {1}");
  o.require(std::abs(run.final_inputs[0]) < 1e-12, "amplitude at |000> is " + fmt(std::abs(run.final_inputs[0])));
  o.require(!run.constant, "balanced function classified constant");
  return o;
}

Outcome shor() {
  Outcome o;
  auto check = [&](std::vector<std::uint32_t> f, std::vector<std::size_t> want, const char* name) {
    const auto r = shor_period_find(OracleTable(2, 2, std::move(f)));
    double total = 0.0;
    for (double p : r.distribution) total += p;
    o.require(r.support == want, std::string(name) + " support mismatch");
    o.require(std::abs(total - 1.0) < 1e-12, std::string(name) + " probabilities sum to " + fmt(total));
  };
  check({1, 3, 1, 3}, {0, 2}, "f2");
  check({1, 2, 0, 3}, {0, 1, 2, 3}, "f4");
  check({2, 2, 2, 2}, {0}, "constant");
  return o;
}

Outcome north_pole() {
  Outcome o;
  const auto cfg = default_position_config(3);
  double worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const auto rep = north_pole_classify(map_state(basis(3, i), cfg));
    const int ones = std::popcount(i);
    const int D = 6 * ones - 9;
    o.require(rep.asymptotic_degree == D, "asymptotic degree of |" + basis_label(i, 3) + ">");
    worst = std::max(worst, std::abs(rep.fitted_exponent - (2.0 - D)));
    const auto want = ones >= 2 ? NorthPoleBehavior::Diverges : NorthPoleBehavior::Vanishes;
    o.require(rep.behavior == want, "classification of |" + basis_label(i, 3) + ">");
  }
  o.require(worst < 0.1, "fitted exponent off by " + fmt(worst));
  if (o.pass) o.detail = "max exponent error " + fmt(worst);
  return o;
}

Outcome halo_geometry() {
  Outcome o;
  const auto cfg = RepresentationConfig::position({-1.0, 1.0}, 1);
  const auto v = is_separable_geometric(tensor(QubitState(1, {1.0, 1.0}), make_basis_state(1, "0")), cfg);
  const auto& h = v.halos.halos.at(0);
  auto has = [&](cplx z) {
    return std::any_of(h.zeros.begin(), h.zeros.end(), [&](cplx p) { return std::abs(p - z) < 1e-8; });
  };
  o.require(h.status == HaloStatus::Regular && h.zeros.size() == 2 && has({-1, 1}) && has({-1, -1}),
            "halo around -1 is not {-1+i, -1-i}");
  o.require(v.halos.halos.at(1).status == HaloStatus::AtInfinity, "+1 defect not at infinity");
  o.require(v.separable && v.witness_residual <= 1e-8, "witness residual " + fmt(v.witness_residual));
  if (o.pass) o.detail = "witness residual " + fmt(v.witness_residual);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"charge-rep exponents and injectivity", charge_exponents},
      {"d=2 collision and variable-particle independence", d2_collision},
      {"position-rep independence instances", position_independence},
      {"Gram construction", gram_construction},
      {"circle inner product", circle_inner},
      {"separability detection", separability},
      {"Deutsch-Jozsa reproduction", deutsch_jozsa_run},
      {"period finding supports", shor},
      {"north-pole asymptotics", north_pole},
      {"halo geometry and witness", halo_geometry},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %2zu %s%s%s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
