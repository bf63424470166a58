#include <bit>
#include <optional>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qflow/qflow.hpp"

namespace py = pybind11;
using namespace qflow;

namespace {

// Field is a std::variant, which pybind11 would otherwise convert by value.
struct PyField {
  Field f;
};

using Amplitudes = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

QubitState to_state(const Amplitudes& a) {
  if (a.ndim() != 1) throw InvalidArgument("state must be a 1-d array");
  const auto size = static_cast<std::size_t>(a.shape(0));
  if (size < 2 || (size & (size - 1)) != 0) throw InvalidArgument("state length must be a power of two >= 2");
  const int n = std::countr_zero(size);
  return QubitState(n, std::vector<cplx>(a.data(), a.data() + size));
}

Amplitudes to_array(const QubitState& s) {
  return Amplitudes(static_cast<py::ssize_t>(s.dim()), s.amplitudes().data());
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::handle& obj) {
  return parse_json(py::module_::import("json").attr("dumps")(obj).cast<std::string>(), "argument");
}

BBox to_bbox(const std::optional<std::array<double, 4>>& b, const Field& f) {
  if (b) return {(*b)[0], (*b)[1], (*b)[2], (*b)[3]};
  std::vector<cplx> extra;
  if (const auto* rf = std::get_if<RationalField>(&f)) extra = rf->defects;
  return auto_bbox(extract_defects(f), extra);
}

std::optional<RepresentationConfig> halo_config(const Field& f) {
  const auto* rf = std::get_if<RationalField>(&f);
  if (!rf) return std::nullopt;
  return RepresentationConfig::position(rf->defects, rf->d);
}

py::dict run_to_dict(const std::vector<QubitState>& stages) {
  py::list out;
  for (const auto& s : stages) out.append(to_array(s));
  py::dict d;
  d["stages"] = out;
  return d;
}

}  // namespace

PYBIND11_MODULE(qflow, m) {
  m.doc() = "Qubit states as planar flow fields";

  static PyObject* pole_error = py::exception<PoleError>(m, "PoleError", PyExc_ValueError).release().ptr();
  static PyObject* numerical_error =
      py::exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PoleError& e) {
      PyErr_SetObject(pole_error, py::make_tuple(e.what(), e.location()).ptr());
    } catch (const NumericalError& e) {
      PyErr_SetString(numerical_error, e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  // states
  m.def("basis_state", [](const std::string& bits) { return to_array(make_basis_state(static_cast<int>(bits.size()), bits)); },
        py::arg("bits"), "Computational basis state; qubit 1 is the leftmost bit.");
  m.def(
      "named_state",
      [](const std::string& name, std::optional<int> n) {
        const auto kind = parse_named_state(name);
        const bool bell = kind != NamedState::GHZ && kind != NamedState::W;
        return to_array(make_named_state(kind, n.value_or(bell ? 2 : 3)));
      },
      py::arg("name"), py::arg("n") = py::none());
  m.def("tensor", [](const Amplitudes& a, const Amplitudes& b) { return to_array(tensor(to_state(a), to_state(b))); });
  m.def(
      "apply_gate",
      [](const Amplitudes& s, const std::string& gate, std::vector<int> targets, double param) {
        return to_array(apply_op(to_state(s), CircuitOp{gate, std::move(targets), param}));
      },
      py::arg("state"), py::arg("gate"), py::arg("targets"), py::arg("param") = 0.0);
  m.def("qft", [](const Amplitudes& s) { return to_array(qft(to_state(s))); });
  m.def("inverse_qft", [](const Amplitudes& s) { return to_array(inverse_qft(to_state(s))); });
  m.def("is_separable_tensor", [](const Amplitudes& s) { return is_separable_tensor(to_state(s)); });
  m.def("factorizable_qubits", [](const Amplitudes& s) { return factorizable_qubits(to_state(s)); });

  // algorithms
  m.def(
      "deutsch_jozsa",
      [](std::vector<std::uint32_t> values) {
        const auto run = deutsch_jozsa(OracleTable(3, 1, std::move(values)));
        auto d = run_to_dict(run.stages);
        d["oracle_inputs"] = to_array(run.oracle_inputs);
        d["final_inputs"] = to_array(run.final_inputs);
        d["constant"] = run.constant;
        return d;
      },
      py::arg("values"), "Deutsch-Jozsa on a 3-bit truth table.");
  m.def(
      "period_find",
      [](std::vector<std::uint32_t> values) {
        const auto run = shor_period_find(OracleTable(2, 2, std::move(values)));
        auto d = run_to_dict(run.stages);
        d["distribution"] = run.distribution;
        d["support"] = run.support;
        return d;
      },
      py::arg("values"), "Period finding on a 2-bit to 2-bit truth table.");

  // representations
  py::class_<RepresentationConfig>(m, "Config")
      .def_static("charge", &RepresentationConfig::charge, py::arg("n"), py::arg("d"))
      .def_static("position", &RepresentationConfig::position, py::arg("defects"), py::arg("d"))
      .def_static("default", &default_position_config, py::arg("n"), py::arg("d") = py::none())
      .def_property_readonly("kind",
                             [](const RepresentationConfig& c) { return c.kind == Representation::Charge ? "charge" : "position"; })
      .def_readonly("n", &RepresentationConfig::n)
      .def_readonly("d", &RepresentationConfig::d)
      .def_readonly("defects", &RepresentationConfig::defects)
      .def("__repr__", [](const RepresentationConfig& c) { return "Config(" + config_to_json(c).dump() + ")"; });

  m.def("exponent", &exponent, py::arg("bits"), py::arg("d"));
  m.def("ternary_exponent", &ternary_exponent, py::arg("tau"), py::arg("d"));

  py::class_<PyField>(m, "Field")
      .def("__call__", [](const PyField& pf, cplx z) { return eval_value(pf.f, z); })
      .def("velocity",
           [](const PyField& pf, cplx z) {
             const auto v = eval_field(pf.f, z);
             return std::make_pair(v.u, v.v);
           })
      .def("derivatives", [](const PyField& pf, cplx alpha, int order) { return derivative_eval(pf.f, alpha, order); })
      .def_property_readonly("poles", [](const PyField& pf) { return pole_locations(pf.f); })
      .def_property_readonly("asymptotic_degree", [](const PyField& pf) { return asymptotic_degree(pf.f); })
      .def("to_json", [](const PyField& pf) { return to_python(field_to_json(pf.f)); })
      .def_static("from_json", [](const py::object& o) { return PyField{field_from_json(from_python(o))}; });

  m.def("map_state", [](const Amplitudes& s, const RepresentationConfig& cfg) { return PyField{map_state(to_state(s), cfg)}; },
        py::arg("state"), py::arg("config"));
  m.def("defects", [](const PyField& pf) { return to_python(defects_to_json(extract_defects(pf.f))); });
  m.def(
      "analyze",
      [](const Amplitudes& s, const RepresentationConfig& cfg) {
        const auto v = is_separable_geometric(to_state(s), cfg);
        py::dict d;
        d["separable"] = v.separable;
        d["defects"] = to_python(defects_to_json(v.defects));
        d["halos"] = to_python(halo_report_to_json(v.halos));
        d["witness"] = v.witness;
        d["witness_residual"] = v.witness_residual;
        return d;
      },
      py::arg("state"), py::arg("config"), "Geometric separability test from the field's defects.");
  m.def(
      "check_linear_independence",
      [](const RepresentationConfig& cfg) {
        const auto r = check_linear_independence(basis_fields(cfg));
        return py::dict(py::arg("independent") = r.independent, py::arg("rank") = r.rank, py::arg("count") = r.count,
                        py::arg("singular_values") = r.singular_values);
      },
      py::arg("config"));
  m.def(
      "check_variable_particle",
      [](int n, int d) {
        const auto r = check_linear_independence(variable_particle_fields(n, d));
        return py::dict(py::arg("independent") = r.independent, py::arg("rank") = r.rank, py::arg("count") = r.count);
      },
      py::arg("n"), py::arg("d"));
  m.def(
      "charge_bounds",
      [](int n) {
        py::object big = py::module_::import("builtins").attr("int")(sufficient_charge_bound(n).str());
        return py::make_tuple(necessary_charge_bound(n), big);
      },
      py::arg("n"), "(necessary, sufficient) charge bounds for n qubits.");

  // inner products
  py::class_<GramContext>(m, "Gram")
      .def_readonly("alpha", &GramContext::alpha)
      .def_readonly("B", &GramContext::B)
      .def_readonly("P", &GramContext::P)
      .def_readonly("condition", &GramContext::condition)
      .def("inner", [](const GramContext& g, const PyField& pa, const PyField& pb) { return inner(pa.f, pb.f, g); })
      .def("to_json", [](const GramContext& g) { return to_python(gram_to_json(g)); });
  m.def(
      "build_gram",
      [](const RepresentationConfig& cfg, double max_condition) {
        GramOptions opts;
        opts.max_condition = max_condition;
        return build_gram(cfg, opts);
      },
      py::arg("config"), py::arg("max_condition") = 1e8);
  m.def(
      "circle_inner_product",
      [](const PyField& pa, const PyField& pb, std::optional<int> nodes) {
        const auto* la = std::get_if<LaurentField>(&pa.f);
        const auto* lb = std::get_if<LaurentField>(&pb.f);
        if (!la || !lb) throw InvalidArgument("circle inner product needs charge-representation fields");
        return nodes ? circle_inner_product(*la, *lb, *nodes) : circle_inner_product(*la, *lb);
      },
      py::arg("f1"), py::arg("f2"), py::arg("nodes") = py::none());

  // rendering
  m.def(
      "sample_grid",
      [](const PyField& pf, std::optional<std::array<double, 4>> bbox, int res, double clip) {
        const auto g = sample_grid(pf.f, to_bbox(bbox, pf.f), res, res, clip);
        py::array_t<double> x({g.ny, g.nx}), y({g.ny, g.nx}), u({g.ny, g.nx}), v({g.ny, g.nx});
        py::array_t<bool> c({g.ny, g.nx});
        for (std::size_t i = 0; i < g.samples.size(); ++i) {
          x.mutable_data()[i] = g.samples[i].x;
          y.mutable_data()[i] = g.samples[i].y;
          u.mutable_data()[i] = g.samples[i].u;
          v.mutable_data()[i] = g.samples[i].v;
          c.mutable_data()[i] = g.samples[i].clipped;
        }
        return py::dict(py::arg("x") = x, py::arg("y") = y, py::arg("u") = u, py::arg("v") = v, py::arg("clipped") = c);
      },
      py::arg("field"), py::arg("bbox") = py::none(), py::arg("res") = 48, py::arg("clip") = kDefaultClip);
  m.def(
      "render_svg",
      [](const PyField& pf, std::optional<std::array<double, 4>> bbox, int res, double clip) {
        const auto defects = extract_defects(pf.f);
        const auto cfg = halo_config(pf.f);
        std::optional<HaloReport> halos;
        if (cfg) halos = detect_halos(defects, *cfg);
        return render_svg(sample_grid(pf.f, to_bbox(bbox, pf.f), res, res, clip), defects, halos ? &*halos : nullptr);
      },
      py::arg("field"), py::arg("bbox") = py::none(), py::arg("res") = 48, py::arg("clip") = kDefaultClip);
  m.def(
      "north_pole",
      [](const PyField& pf) {
        const auto r = north_pole_classify(pf.f);
        return py::dict(py::arg("behavior") = std::string(to_string(r.behavior)),
                        py::arg("asymptotic_degree") = r.asymptotic_degree,
                        py::arg("fitted_exponent") = r.fitted_exponent,
                        py::arg("expected_exponent") = r.expected_exponent());
      },
      py::arg("field"));
  m.def(
      "project_vector",
      [](const PyField& pf, double theta, double phi) {
        const auto s = project_vector(pf.f, theta, phi);
        return py::make_tuple(s.position, s.U);
      },
      py::arg("field"), py::arg("theta"), py::arg("phi"));
}
