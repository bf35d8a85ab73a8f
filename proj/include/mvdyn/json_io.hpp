#pragma once

#include <string>

#include "json.hpp"
#include "mvdyn/core.hpp"
#include "mvdyn/simplex.hpp"

namespace mvdyn {

// System files: {"name": optional, "points": [unique labels], "maps": [[...]]}.
// Polynomial files: {"terms": [{"word": [1-based letters], "coeff": [[re, im] x m]}]}.
// Shape and range violations throw std::invalid_argument with a message.

MultiSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const MultiSystem& sys, const std::string& name = "");
MultiSystem load_system(const std::string& path);

Polynomial poly_from_json(const nlohmann::json& j, int m, int n);
nlohmann::json poly_to_json(const Polynomial& a);
Polynomial load_poly(const std::string& path, int m, int n);

// Cycle notation for permutations: "(1 2)(3)" with "e" for the identity.
Perm parse_cycles(const std::string& text, int n);
std::string cycles_string(const Perm& alpha);

// fixed 12 fractional digits; all floating output goes through here
std::string fmt_fixed(double value);
nlohmann::json cplx_json(const cplx& value);

}  // namespace mvdyn
