#pragma once

#include <string>

#include <json.hpp>

#include "qflow/circuit.hpp"
#include "qflow/defects.hpp"
#include "qflow/field.hpp"
#include "qflow/inner_product.hpp"
#include "qflow/polynomial.hpp"
#include "qflow/state.hpp"

namespace qflow {

using nlohmann::json;

/// Parses JSON text, turning syntax errors into InvalidArgument with the
/// parser's line/column diagnostics prefixed by `source`.
json parse_json(const std::string& text, const std::string& source = "input");
json read_json_file(const std::string& path);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& path);

// {"n": int, "amplitudes": [[re, im], ...]}
json state_to_json(const QubitState& s);
QubitState state_from_json(const json& j);

// {"n": int, "ops": [{"gate": "H", "targets": [1]}, ...], "inputs": ["000", ...]}
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

// {"type": "laurent", "terms": [[c, [re, im]], ...]}
// {"type": "rational", "numerator": [[re, im], ...], "defects": [[re, im], ...], "d": int}
json field_to_json(const Field& f);
Field field_from_json(const json& j);

// {"kind": "position", "d": 3, "defects": [[re, im], ...]} or {"kind": "charge", "n": 2, "d": 3}
json config_to_json(const RepresentationConfig& cfg);
RepresentationConfig config_from_json(const json& j);

// {"roots": [[re, im, mult], ...], "residual": x}
json roots_to_json(const RootSet& r);

json defects_to_json(const DefectSet& d);

// {"halos": [{"center": [re, im], "status": "regular", "zeros": [...], "alpha": [re, im], "beta": [re, im]}, ...],
//  "leftover": [[re, im, mult], ...]}
json halo_report_to_json(const HaloReport& r);

json matrix_to_json(const ComplexMatrix& m);
// {"config": ..., "alpha": [re, im], "condition": x, "B": [[[re, im], ...], ...], "P": ...}
json gram_to_json(const GramContext& ctx);

}  // namespace qflow
