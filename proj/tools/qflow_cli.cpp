#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qflow/qflow.hpp"

using namespace qflow;
namespace fs = std::filesystem;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

// Representation flags shared by several subcommands.
struct RepOptions {
  std::string rep = "position";
  std::optional<int> d;
  std::string defects;

  void attach(CLI::App* app) {
    app->add_option("--rep", rep, "charge or position")->check(CLI::IsMember({"charge", "position"}));
    app->add_option("--d", d, "defect charge d");
    app->add_option("--defects", defects, "basis defects as 're,im;re,im;...'");
  }

  RepresentationConfig config(int n) const {
    if (rep == "charge") return RepresentationConfig::charge(n, d.value_or(n <= 2 ? 1 : 3));
    if (defects.empty()) return default_position_config(n, d);
    auto cfg = RepresentationConfig::position(parse_defects(defects), d.value_or(1));
    if (cfg.n != n) {
      throw InvalidArgument("--defects lists " + std::to_string(cfg.n) + " positions for a " + std::to_string(n) +
                            "-qubit state");
    }
    return cfg;
  }

  bool kind_charge() const { return rep == "charge"; }

  // Position config without the independence guard, for reporting on it.
  RepresentationConfig config_unchecked(int n) const {
    auto pts = defects.empty() ? default_defects(n) : parse_defects(defects);
    const int dd = d ? *d : default_position_config(n).d;
    auto cfg = RepresentationConfig::position(std::move(pts), dd);
    if (cfg.n != n) throw InvalidArgument("--defects does not list " + std::to_string(n) + " positions");
    return cfg;
  }

  static std::vector<cplx> parse_defects(const std::string& text) {
    std::vector<cplx> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
      double re = 0.0, im = 0.0;
      char comma = 0;
      std::istringstream is(item);
      if (!(is >> re)) throw InvalidArgument("--defects: cannot parse '" + item + "'");
      if (is >> comma) {
        if (comma != ',' || !(is >> im)) throw InvalidArgument("--defects: cannot parse '" + item + "'");
      }
      out.emplace_back(re, im);
    }
    if (out.empty()) throw InvalidArgument("--defects is empty");
    return out;
  }
};

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

QubitState load_state(const std::string& path) {
  try {
    return state_from_json(read_json_file(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

// A field file, or a state file mapped with the representation flags.
Field load_field(const std::string& path, const RepOptions& rep) {
  const json j = read_json_file(path);
  try {
    if (j.is_object() && j.contains("type")) return field_from_json(j);
    const auto s = state_from_json(j);
    return map_state(s, rep.config(s.num_qubits()));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::optional<RepresentationConfig> config_of(const Field& f) {
  const auto* rf = std::get_if<RationalField>(&f);
  if (!rf) return std::nullopt;
  return RepresentationConfig::position(rf->defects, rf->d);
}

BBox parse_bbox(const std::vector<double>& v) {
  if (v.size() != 4) throw InvalidArgument("--bbox needs xmin,xmax,ymin,ymax");
  return {v[0], v[1], v[2], v[3]};
}

json analysis_report(const QubitState& s, const RepresentationConfig& cfg) {
  json out = {{"config", config_to_json(cfg)}};
  if (cfg.kind == Representation::Position) {
    const auto v = is_separable_geometric(s, cfg);
    out["defects"] = defects_to_json(v.defects);
    out["halos"] = halo_report_to_json(v.halos);
    out["separable"] = v.separable;
    if (!v.witness.empty()) {
      json w = json::array();
      for (const auto& [a, b] : v.witness) w.push_back({complex_to_json(a), complex_to_json(b)});
      out["witness"] = w;
      out["witness_residual"] = v.witness_residual;
    }
  } else {
    out["defects"] = defects_to_json(extract_defects(map_state(s, cfg)));
    out["separable"] = is_separable_tensor(s);
  }
  out["separable_tensor"] = is_separable_tensor(s);
  out["factorizable_qubits"] = factorizable_qubits(s);
  return out;
}

std::string render_field(const Field& f, const std::optional<BBox>& bbox, int res, double clip, const std::string& title) {
  const auto defects = extract_defects(f);
  const auto cfg = config_of(f);
  std::optional<HaloReport> halos;
  if (cfg) halos = detect_halos(defects, *cfg);
  const BBox box = bbox ? *bbox : auto_bbox(defects, cfg ? cfg->defects : std::vector<cplx>{});
  SvgOptions opts;
  opts.title = title;
  return render_svg(sample_grid(f, box, res, res, clip), defects, halos ? &*halos : nullptr, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit states as planar flow fields"};
  app.require_subcommand(1);
  std::string out_path;

  // state
  auto* cmd_state = app.add_subcommand("state", "Build a state and write its JSON");
  std::string bits, name;
  int n_qubits = 0;
  bool normalize = false;
  cmd_state->add_option("--bits", bits, "computational basis bitstring, qubit 1 first");
  cmd_state->add_option("--name", name, "GHZ, W, Bell00+, Bell00-, Bell01+, Bell01-");
  cmd_state->add_option("--n", n_qubits, "qubit count for named states");
  cmd_state->add_flag("--normalize", normalize, "scale to unit norm");
  cmd_state->add_option("-o,--output", out_path);

  // map
  auto* cmd_map = app.add_subcommand("map", "Map a state to its field");
  std::string input;
  RepOptions rep;
  cmd_map->add_option("state", input)->required();
  rep.attach(cmd_map);
  cmd_map->add_option("-o,--output", out_path);

  // analyze
  auto* cmd_analyze = app.add_subcommand("analyze", "Defects, halos and separability of a state");
  cmd_analyze->add_option("state", input)->required();
  rep.attach(cmd_analyze);
  cmd_analyze->add_option("-o,--output", out_path);

  // gram
  auto* cmd_gram = app.add_subcommand("gram", "Build the derivative inner product for a configuration");
  double max_condition = 1e8;
  cmd_gram->add_option("--n", n_qubits, "qubit count")->required();
  rep.attach(cmd_gram);
  cmd_gram->add_option("--max-condition", max_condition, "largest acceptable condition number of B");
  cmd_gram->add_option("-o,--output", out_path);

  // circuit
  auto* cmd_circuit = app.add_subcommand("circuit", "Run a JSON circuit and emit per-step states and fields");
  std::vector<std::string> inputs;
  std::string render_dir;
  cmd_circuit->add_option("circuit", input)->required();
  cmd_circuit->add_option("--input", inputs, "input bitstrings (default: the file's inputs, else all zeros)");
  rep.attach(cmd_circuit);
  cmd_circuit->add_option("--render", render_dir, "write an SVG of each final state into this directory");
  cmd_circuit->add_option("-o,--output", out_path);

  // render
  auto* cmd_render = app.add_subcommand("render", "Sample a field and write SVG and/or CSV");
  std::string svg_path, csv_path;
  std::vector<double> bbox;
  int res = 48;
  double clip = kDefaultClip;
  cmd_render->add_option("input", input, "field or state JSON")->required();
  rep.attach(cmd_render);
  cmd_render->add_option("--svg", svg_path);
  cmd_render->add_option("--csv", csv_path);
  cmd_render->add_option("--bbox", bbox, "xmin,xmax,ymin,ymax")->delimiter(',');
  cmd_render->add_option("--res", res, "samples per axis")->check(CLI::Range(2, 4096));
  cmd_render->add_option("--clip", clip, "velocity clip threshold")->check(CLI::PositiveNumber);

  // sphere
  auto* cmd_sphere = app.add_subcommand("sphere", "Lift a field to the sphere and classify the north pole");
  int n_theta = 24, n_phi = 48;
  cmd_sphere->add_option("input", input, "field or state JSON")->required();
  rep.attach(cmd_sphere);
  cmd_sphere->add_option("--n-theta", n_theta)->check(CLI::Range(1, 100000));
  cmd_sphere->add_option("--n-phi", n_phi)->check(CLI::Range(1, 100000));
  cmd_sphere->add_option("--csv", csv_path, "theta,phi,x,y,z,U1,U2,U3 samples");
  cmd_sphere->add_option("-o,--output", out_path);

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "Necessary and sufficient charge bounds for n qubits");
  cmd_bounds->add_option("--n", n_qubits)->required();

  // checkli
  auto* cmd_checkli = app.add_subcommand("checkli", "Linear-independence report for a basis family");
  bool variable = false;
  cmd_checkli->add_option("--n", n_qubits)->required();
  rep.attach(cmd_checkli);
  cmd_checkli->add_flag("--variable", variable, "use the 3^n - 1 variable-particle fields (charge)");
  cmd_checkli->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*cmd_state) {
      QubitState s(1);
      if (!bits.empty() == !name.empty()) throw InvalidArgument("give exactly one of --bits or --name");
      if (!bits.empty()) {
        s = make_basis_state(static_cast<int>(bits.size()), bits);
      } else {
        const auto kind = parse_named_state(name);
        const bool bell = kind != NamedState::GHZ && kind != NamedState::W;
        s = make_named_state(kind, n_qubits > 0 ? n_qubits : (bell ? 2 : 3));
      }
      if (normalize) s = s.normalized();
      emit(state_to_json(s), out_path);
    } else if (*cmd_map) {
      const auto s = load_state(input);
      emit(field_to_json(map_state(s, rep.config(s.num_qubits()))), out_path);
    } else if (*cmd_analyze) {
      const auto s = load_state(input);
      emit(analysis_report(s, rep.config(s.num_qubits())), out_path);
    } else if (*cmd_gram) {
      GramOptions opts;
      opts.max_condition = max_condition;
      const auto cfg = rep.kind_charge() ? rep.config(n_qubits) : rep.config_unchecked(n_qubits);
      emit(gram_to_json(build_gram(cfg, opts)), out_path);
    } else if (*cmd_circuit) {
      const Circuit c = [&] {
        try {
          return circuit_from_json(read_json_file(input));
        } catch (const InvalidArgument& e) {
          throw InvalidArgument(input + ": " + e.what());
        }
      }();
      if (inputs.empty()) inputs = c.inputs;
      if (inputs.empty()) inputs.push_back(std::string(static_cast<std::size_t>(c.n), '0'));
      const auto cfg = rep.config(c.n);
      if (!render_dir.empty()) fs::create_directories(render_dir);
      const std::string stem = fs::path(input).stem().string();
      json runs = json::array();
      for (const auto& in : inputs) {
        const auto steps = run_circuit(c, make_basis_state(c.n, in));
        json js = json::array();
        for (std::size_t k = 0; k < steps.size(); ++k) {
          json step = {{"state", state_to_json(steps[k])}, {"field", field_to_json(map_state(steps[k], cfg))}};
          step["op"] = k == 0 ? json(nullptr) : json(c.ops[k - 1].gate);
          js.push_back(std::move(step));
        }
        runs.push_back({{"input", in}, {"steps", std::move(js)}});
        if (!render_dir.empty()) {
          const Field f = map_state(steps.back(), cfg);
          write_text((fs::path(render_dir) / (stem + "_" + in + ".svg")).string(),
                     render_field(f, std::nullopt, 48, kDefaultClip, stem + " |" + in + ">"));
        }
      }
      emit({{"circuit", circuit_to_json(c)}, {"config", config_to_json(cfg)}, {"runs", std::move(runs)}}, out_path);
    } else if (*cmd_render) {
      if (svg_path.empty() && csv_path.empty()) throw InvalidArgument("give --svg and/or --csv");
      const Field f = load_field(input, rep);
      const std::optional<BBox> box = bbox.empty() ? std::nullopt : std::optional<BBox>(parse_bbox(bbox));
      if (!svg_path.empty()) write_text(svg_path, render_field(f, box, res, clip, fs::path(input).stem().string()));
      if (!csv_path.empty()) {
        const auto defects = extract_defects(f);
        const auto cfg = config_of(f);
        const BBox b = box ? *box : auto_bbox(defects, cfg ? cfg->defects : std::vector<cplx>{});
        std::ostringstream csv;
        write_grid_csv(csv, sample_grid(f, b, res, res, clip));
        write_text(csv_path, csv.str());
      }
    } else if (*cmd_sphere) {
      const Field f = load_field(input, rep);
      const auto report = north_pole_classify(f);
      const auto samples = stereographic_project(f, n_theta, n_phi);
      if (!csv_path.empty()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "theta,phi,x,y,z,U1,U2,U3\n";
        for (const auto& s : samples) {
          csv << s.theta << ',' << s.phi << ',' << s.position[0] << ',' << s.position[1] << ',' << s.position[2] << ','
              << s.U[0] << ',' << s.U[1] << ',' << s.U[2] << '\n';
        }
        write_text(csv_path, csv.str());
      }
      json j = {{"behavior", std::string(to_string(report.behavior))},
                {"asymptotic_degree", report.asymptotic_degree},
                {"expected_exponent", report.expected_exponent()},
                {"samples", samples.size()}};
      j["fitted_exponent"] = std::isfinite(report.fitted_exponent) ? json(report.fitted_exponent) : json(nullptr);
      emit(j, out_path);
    } else if (*cmd_bounds) {
      json j = {{"n", n_qubits}, {"necessary", necessary_charge_bound(n_qubits)}};
      j["sufficient"] = n_qubits <= 20 ? json(sufficient_charge_bound(n_qubits).str()) : json(nullptr);
      emit(j, "");
    } else if (*cmd_checkli) {
      IndependenceReport r;
      json j;
      if (variable) {
        const int d = rep.d.value_or(3);
        r = check_linear_independence(variable_particle_fields(n_qubits, d));
        j = {{"family", "variable-particle"}, {"n", n_qubits}, {"d", d}};
      } else {
        const auto cfg = rep.kind_charge() ? RepresentationConfig::charge(n_qubits, rep.d.value_or(3))
                                           : rep.config_unchecked(n_qubits);
        r = check_linear_independence(basis_fields(cfg));
        j = {{"family", "basis"}, {"config", config_to_json(cfg)}};
      }
      j["independent"] = r.independent;
      j["rank"] = r.rank;
      j["count"] = r.count;
      j["singular_values"] = r.singular_values;
      emit(j, out_path);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
