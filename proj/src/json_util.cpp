#include "frobsplit/json_util.hpp"

#include <limits>
#include <stdexcept>

namespace frobsplit {

nlohmann::json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() &&
        v <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(v);
    }
    return v.str();
}

Int int_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": not an integer");
        }
    }
    throw std::invalid_argument(what + ": not an integer");
}

}  // namespace frobsplit
