#pragma once

#include <string>

#include <json.hpp>

#include "nclp/interpolation.hpp"

namespace nclp {

using json = nlohmann::json;

// Config schemas
//   algebra:       {"blocks": [{"dim": 2, "weight": 1.0}, ...]}
//   element:       per-block row-major [re, im] pairs:
//                  [[[re,im], ...dim^2 entries], ...]
//   step function: {"atoms": [{"re":, "im":, "measure":}, ...]}
//   scalar fn:     "identity" | "pos_part" | "neg_part"
//                  | {"name": "const", "c":} | {"name": "clip", "a":, "b":}
//   centralizer:   {"kind": "omega_p"|"lipschitz"|"phi_plus"|"phi_minus"
//                           |"lifted", "p":, "phi": scalar fn (lipschitz only)}
//   strip fn:      {"lambda":, "terms": [{"rate":, "coefficient": element}]}
//   couple:        "M_L1" | "kosaki_left" | "kosaki_right"

AlgebraPtr parse_algebra(const json& j);
Element parse_element(const json& j, const AlgebraPtr& alg);
StepFunction parse_step_function(const json& j);
ScalarFunction parse_scalar_function(const json& j);
NCCentralizer parse_centralizer(const json& j);
StripFunction parse_strip_function(const json& j, const AlgebraPtr& alg);

json element_to_json(const Element& x);

/// 17 significant digits: round-trip exact for IEEE doubles.
std::string fmt17(double v);

}  // namespace nclp
