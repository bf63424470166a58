#include <random>

#include <doctest.h>

#include "qflow/io.hpp"
#include "test_support.hpp"

using namespace qflow;

TEST_CASE("state JSON round trip") {
  std::mt19937_64 rng(1);
  const auto s = qflow::testing::random_state(3, rng);
  const auto back = state_from_json(parse_json(state_to_json(s).dump()));
  CHECK(qflow::testing::max_abs_diff(s, back) == 0.0);
}

TEST_CASE("state JSON diagnostics name the field") {
  auto bad = [](const std::string& text) -> std::string {
    try {
      state_from_json(parse_json(text));
    } catch (const InvalidArgument& e) {
      return e.what();
    }
    return "";
  };
  CHECK(bad(R"({"n": 1, "amplitudes": [[1, 0], [0, "x"]]})").find("state.amplitudes[1][1]") != std::string::npos);
  CHECK(bad(R"({"n": 1, "amplitudes": [[1, 0]]})").find("state.amplitudes") != std::string::npos);
  CHECK(bad(R"({"amplitudes": []})").find("missing field 'n'") != std::string::npos);
  CHECK(bad(R"({"n": 1, "amplitudes": [[1, 0], [0, 1, 2]]})").find("state.amplitudes[1]") != std::string::npos);
  CHECK(bad("{\"n\": 1,\n \"amplitudes\": [}").find("line 2") != std::string::npos);
}

TEST_CASE("field JSON round trip") {
  const auto cfg = default_position_config(2);
  const Field rf = map_state(make_named_state(NamedState::Bell00Plus, 2), cfg);
  const Field back = field_from_json(parse_json(field_to_json(rf).dump()));
  const auto& a = std::get<RationalField>(rf);
  const auto& b = std::get<RationalField>(back);
  CHECK(a.numerator.coeffs() == b.numerator.coeffs());
  CHECK(a.defects == b.defects);
  CHECK(a.d == b.d);

  const Field lf = charge_map(make_named_state(NamedState::GHZ, 3), 3);
  const auto lj = field_to_json(lf);
  CHECK(lj["type"] == "laurent");
  CHECK(std::get<LaurentField>(field_from_json(lj)).terms() == std::get<LaurentField>(lf).terms());

  CHECK_THROWS_AS(field_from_json(parse_json(R"({"type": "spline"})")), InvalidArgument);
  CHECK_THROWS_AS(field_from_json(parse_json(R"({"type": "rational", "numerator": [[1,0]], "defects": [], "d": 1})")),
                  InvalidArgument);
}

TEST_CASE("circuit and config JSON") {
  const auto c = circuit_from_json(parse_json(
      R"({"n": 2, "ops": [{"gate": "H", "targets": [1]}, {"gate": "CPHASE", "targets": [1, 2], "param": 0.5}],
          "inputs": ["00", "11"]})"));
  CHECK(c.ops.size() == 2);
  CHECK(c.ops[1].param == 0.5);
  CHECK(c.inputs.size() == 2);
  CHECK(circuit_from_json(circuit_to_json(c)).ops[1].targets == std::vector<int>{1, 2});
  CHECK_THROWS_AS(circuit_from_json(parse_json(R"({"n": 2, "ops": [], "inputs": ["0"]})")), InvalidArgument);

  const auto cfg = config_from_json(parse_json(R"({"kind": "position", "d": 3, "defects": [[-1,0],[0,1],[1,0]]})"));
  CHECK(cfg.n == 3);
  CHECK(cfg.d == 3);
  CHECK(config_from_json(config_to_json(cfg)).defects == cfg.defects);
  CHECK_THROWS_AS(config_from_json(parse_json(R"({"kind": "position", "d": 1, "defects": [[1,0],[1,0]]})")),
                  InvalidArgument);
}

TEST_CASE("report JSON shapes") {
  const auto cfg = RepresentationConfig::position({-1.0, 1.0}, 1);
  const auto defects = extract_defects(map_state(tensor(QubitState(1, {1.0, 1.0}), make_basis_state(1, "0")), cfg));
  const auto j = halo_report_to_json(detect_halos(defects, cfg));
  CHECK(j["halos"][0]["status"] == "regular");
  CHECK(j["halos"][0]["zeros"].size() == 2);
  CHECK(j["halos"][1]["status"] == "at-infinity");
  CHECK(j["leftover"].empty());
  CHECK(defects_to_json(defects)["infinity_charge"] == 0);

  const auto r = roots_to_json(roots(Polynomial({2.0, 2.0, 1.0})));
  CHECK(r["roots"].size() == 2);
  CHECK(r["roots"][0].size() == 3);
}
