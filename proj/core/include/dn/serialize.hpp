#pragma once

// JSON wire formats.  Kept out of the core headers so that installed
// consumers only need nlohmann/json when they actually serialize.

#include <json.hpp>

#include "dn/detright.hpp"
#include "dn/dn_matrix.hpp"
#include "dn/weyl.hpp"

namespace dn {

/// {"terms":[{"y":a,"x":b,"re":"p/q","im":"r/s"}, ...]}
nlohmann::json to_json(const WeylElement& e);
WeylElement weyl_from_json(const nlohmann::json& j);

/// {"size":k,"entries":[[term-list, ...], ...]} row-major, each entry in the
/// element format above.
nlohmann::json to_json(const OperatorMatrix& m);
OperatorMatrix operator_matrix_from_json(const nlohmann::json& j);

/// {"n":2,"entries":{"0,0":"1","0,1":"-3/2",...}} with upper-triangular keys
/// only; values are fraction strings, {"re","im"} objects, or plain numbers
/// (numbers make the matrix numeric-only).
nlohmann::json to_json(const DNMatrix& a);
DNMatrix dn_matrix_from_json(const nlohmann::json& j);

}  // namespace dn
