#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace frobsplit {

// A mathematical refusal: the requested computation lies outside the
// contract of the operation (dagger violated, window insufficient,
// inconsistent table, budget exceeded, ...). Carries a structured payload
// naming the violated contract and the offending data; the CLI turns it
// into error JSON on stderr and exit code 2.
class Refusal : public std::runtime_error {
public:
    Refusal(std::string code, const std::string& message,
            nlohmann::json data = nlohmann::json::object())
        : std::runtime_error(message), code_(std::move(code)), data_(std::move(data)) {}

    const std::string& code() const { return code_; }
    const nlohmann::json& data() const { return data_; }

    nlohmann::json to_json() const {
        return nlohmann::json{{"error", code_}, {"message", what()}, {"data", data_}};
    }

private:
    std::string code_;
    nlohmann::json data_;
};

}  // namespace frobsplit
