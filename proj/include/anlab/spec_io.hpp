#pragma once

#include <string>

#include <json.hpp>

#include "anlab/discfun.hpp"
#include "anlab/entire.hpp"
#include "anlab/spaces.hpp"

namespace anlab {

// JSON spec parsing. Malformed or out-of-range specs throw InvalidSpec.
//
//   function: {"kind":"closed","name":"log1m"|"pow1m"|"identity"|"const", "gamma":g, "value":a}
//             {"kind":"taylor","coeffs":[[re,im],...]}
//             {"kind":"sparse","terms":[[n,re,im],...]}
//             {"kind":"factorprod","factors":[[c,n],...]}
//             {"kind":"rotscaled","c":a,"theta":t,"inner":...}
//             {"kind":"compose","entire":...,"inner":...}
//             {"kind":"wprod","w":...,"inner":...}
//             {"kind":"sum","terms":[...]}
//   entire:   {"kind":"exp"|"cossqrt"|"sin"}, {"kind":"scaledexp","lambda":a,"amp":b},
//             {"kind":"poly","coeffs":[...]}, {"kind":"const","value":a}
//   weight:   {"kind":"power","gamma":g}, {"kind":"log"}, {"kind":"custom","r":[...],"v":[...]}
//   space:    {"kind":"bergman","p":p,"alpha":a}, {"kind":"bloch"},
//             {"kind":"wsup","weight":...}, {"kind":"wdsup","weight":...}
// Complex numbers are a plain number or [re, im].

nlohmann::json parse_spec_text(const std::string& text);  // "@path" reads the file
cplx parse_complex(const nlohmann::json& j);
DiscFunction parse_function(const nlohmann::json& j);
EntireFunction parse_entire(const nlohmann::json& j);
Weight parse_weight(const nlohmann::json& j);
SpaceSpec parse_space(const nlohmann::json& j);

}  // namespace anlab
