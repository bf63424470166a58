#include "qflow/io.hpp"

#include <fstream>
#include <sstream>

namespace qflow {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InvalidArgument(path + ": " + what); }

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json complex_list(const std::vector<cplx>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(complex_to_json(z));
  return a;
}

std::vector<cplx> complex_list_from(const json& j, const std::string& path) {
  std::vector<cplx> out;
  const auto& arr = as_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(complex_from_json(arr[i], index_path(path, i)));
  return out;
}

json root_list(const std::vector<Root>& roots) {
  json a = json::array();
  for (const auto& r : roots) a.push_back({r.location.real(), r.location.imag(), r.multiplicity});
  return a;
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(source + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {as_double(j[0], path + "[0]"), as_double(j[1], path + "[1]")};
}

json state_to_json(const QubitState& s) { return {{"n", s.num_qubits()}, {"amplitudes", complex_list(s.amplitudes())}}; }

QubitState state_from_json(const json& j) {
  const int n = as_int(member(j, "n", "state"), "state.n");
  if (n < 1 || n > 24) fail("state.n", "qubit count out of range");
  auto amps = complex_list_from(member(j, "amplitudes", "state"), "state.amplitudes");
  if (amps.size() != (std::size_t{1} << n)) {
    fail("state.amplitudes", "expected " + std::to_string(std::size_t{1} << n) + " entries, got " + std::to_string(amps.size()));
  }
  return QubitState(n, std::move(amps));
}

json circuit_to_json(const Circuit& c) {
  json ops = json::array();
  for (const auto& op : c.ops) {
    json o = {{"gate", op.gate}, {"targets", op.targets}};
    if (op.param != 0.0) o["param"] = op.param;
    ops.push_back(std::move(o));
  }
  json out = {{"n", c.n}, {"ops", std::move(ops)}};
  if (!c.inputs.empty()) out["inputs"] = c.inputs;
  return out;
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.n = as_int(member(j, "n", "circuit"), "circuit.n");
  if (c.n < 1 || c.n > 24) fail("circuit.n", "qubit count out of range");
  const auto& ops = as_array(member(j, "ops", "circuit"), "circuit.ops");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = index_path("circuit.ops", i);
    CircuitOp op;
    const auto& g = member(ops[i], "gate", path);
    if (!g.is_string()) fail(path + ".gate", "expected a string");
    op.gate = g.get<std::string>();
    const auto& t = as_array(member(ops[i], "targets", path), path + ".targets");
    for (std::size_t k = 0; k < t.size(); ++k) op.targets.push_back(as_int(t[k], index_path(path + ".targets", k)));
    if (ops[i].contains("param")) op.param = as_double(ops[i]["param"], path + ".param");
    c.ops.push_back(std::move(op));
  }
  if (j.contains("inputs")) {
    const auto& in = as_array(j["inputs"], "circuit.inputs");
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!in[i].is_string()) fail(index_path("circuit.inputs", i), "expected a bitstring");
      const auto bits = in[i].get<std::string>();
      if (static_cast<int>(bits.size()) != c.n) fail(index_path("circuit.inputs", i), "bitstring length differs from n");
      c.inputs.push_back(bits);
    }
  }
  return c;
}

json field_to_json(const Field& f) {
  if (const auto* lf = std::get_if<LaurentField>(&f)) {
    json terms = json::array();
    for (const auto& [e, c] : lf->terms()) terms.push_back({e, complex_to_json(c)});
    return {{"type", "laurent"}, {"terms", std::move(terms)}};
  }
  const auto& rf = std::get<RationalField>(f);
  return {{"type", "rational"},
          {"numerator", complex_list(rf.numerator.coeffs())},
          {"defects", complex_list(rf.defects)},
          {"d", rf.d}};
}

Field field_from_json(const json& j) {
  const auto& type = member(j, "type", "field");
  if (!type.is_string()) fail("field.type", "expected a string");
  if (type == "laurent") {
    LaurentField lf;
    const auto& terms = as_array(member(j, "terms", "field"), "field.terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string path = index_path("field.terms", i);
      if (!terms[i].is_array() || terms[i].size() != 2) fail(path, "expected [exponent, [re, im]]");
      if (!terms[i][0].is_number_integer()) fail(path + "[0]", "expected an integer exponent");
      lf.add_term(terms[i][0].get<std::int64_t>(), complex_from_json(terms[i][1], path + "[1]"));
    }
    return lf;
  }
  if (type == "rational") {
    RationalField rf;
    rf.numerator = Polynomial(complex_list_from(member(j, "numerator", "field"), "field.numerator"));
    rf.defects = complex_list_from(member(j, "defects", "field"), "field.defects");
    rf.d = as_int(member(j, "d", "field"), "field.d");
    if (rf.d < 1) fail("field.d", "must be at least 1");
    if (rf.defects.empty()) fail("field.defects", "must not be empty");
    for (std::size_t a = 0; a < rf.defects.size(); ++a) {
      for (std::size_t b = a + 1; b < rf.defects.size(); ++b) {
        if (rf.defects[a] == rf.defects[b]) fail("field.defects", "positions must be distinct");
      }
    }
    return rf;
  }
  fail("field.type", "expected 'laurent' or 'rational'");
}

json config_to_json(const RepresentationConfig& cfg) {
  if (cfg.kind == Representation::Charge) return {{"kind", "charge"}, {"n", cfg.n}, {"d", cfg.d}};
  return {{"kind", "position"}, {"n", cfg.n}, {"d", cfg.d}, {"defects", complex_list(cfg.defects)}};
}

RepresentationConfig config_from_json(const json& j) {
  const auto& kind = member(j, "kind", "config");
  const int d = as_int(member(j, "d", "config"), "config.d");
  try {
    if (kind == "charge") return RepresentationConfig::charge(as_int(member(j, "n", "config"), "config.n"), d);
    if (kind == "position") {
      return RepresentationConfig::position(complex_list_from(member(j, "defects", "config"), "config.defects"), d);
    }
  } catch (const InvalidArgument& e) {
    fail("config", e.what());
  }
  fail("config.kind", "expected 'charge' or 'position'");
}

json roots_to_json(const RootSet& r) { return {{"roots", root_list(r.roots)}, {"residual", r.residual}}; }

json defects_to_json(const DefectSet& d) {
  return {{"zeros", root_list(d.zeros)}, {"poles", root_list(d.poles)}, {"infinity_charge", d.infinity_charge}};
}

json halo_report_to_json(const HaloReport& r) {
  json halos = json::array();
  for (const auto& h : r.halos) {
    json o = {{"center", complex_to_json(h.center)}, {"status", std::string(to_string(h.status))}};
    if (h.status != HaloStatus::Absent) {
      o["zeros"] = complex_list(h.zeros);
      o["alpha"] = complex_to_json(h.alpha);
      o["beta"] = complex_to_json(h.beta);
    }
    if (h.status == HaloStatus::Regular) {
      o["radius"] = h.radius;
      o["phase"] = h.phase;
    }
    halos.push_back(std::move(o));
  }
  return {{"halos", std::move(halos)}, {"leftover", root_list(r.leftover_zeros)}};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json gram_to_json(const GramContext& ctx) {
  return {{"config", config_to_json(ctx.config)},
          {"alpha", complex_to_json(ctx.alpha)},
          {"condition", ctx.condition},
          {"B", matrix_to_json(ctx.B)},
          {"P", matrix_to_json(ctx.P)}};
}

}  // namespace qflow
