#pragma once

#include <string>

#include "json.hpp"
#include "frobsplit/exact_arith.hpp"

namespace frobsplit {

// cpp_int <-> JSON. Values that fit in 64 bits are emitted as JSON numbers;
// anything larger falls back to a decimal string so nothing is ever rounded.
nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j, const std::string& what);

}  // namespace frobsplit
