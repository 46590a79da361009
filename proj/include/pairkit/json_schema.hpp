#pragma once
// Validator for the JSON Schema subset the judge output schema uses:
// type (object/array/string/integer), properties, required,
// additionalProperties:false, minimum, maximum, items.

#include <optional>
#include <string>

#include "json.hpp"

namespace pairkit {

// Returns the first violation as "<json-pointer-ish path>: <reason>", or
// nullopt when the instance conforms.
std::optional<std::string> schema_violation(const nlohmann::json& schema,
                                            const nlohmann::json& instance);

}  // namespace pairkit
