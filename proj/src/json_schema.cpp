#include "pairkit/json_schema.hpp"

namespace pairkit {

namespace {

using nlohmann::json;

bool type_matches(const std::string& type, const json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();  // rejects "4" and 4.5
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  return false;
}

std::optional<std::string> check(const json& schema, const json& inst, const std::string& path) {
  if (schema.contains("type")) {
    const auto type = schema["type"].get<std::string>();
    if (!type_matches(type, inst))
      return path + ": expected " + type + ", got " + std::string(inst.type_name());
  }
  if (inst.is_number_integer()) {
    if (schema.contains("minimum") && inst.get<long long>() < schema["minimum"].get<long long>())
      return path + ": " + inst.dump() + " below minimum " + schema["minimum"].dump();
    if (schema.contains("maximum") && inst.get<long long>() > schema["maximum"].get<long long>())
      return path + ": " + inst.dump() + " above maximum " + schema["maximum"].dump();
  }
  if (inst.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!inst.contains(key.get<std::string>()))
          return path + ": missing required key \"" + key.get<std::string>() + "\"";
    const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    const bool additional_forbidden =
        schema.contains("additionalProperties") && schema["additionalProperties"].is_boolean() &&
        !schema["additionalProperties"].get<bool>();
    for (auto it = inst.begin(); it != inst.end(); ++it) {
      const bool known = props && props->contains(it.key());
      if (!known) {
        if (additional_forbidden) return path + ": unexpected key \"" + it.key() + "\"";
        continue;
      }
      if (auto err = check((*props)[it.key()], it.value(), path + "/" + it.key())) return err;
    }
  }
  if (inst.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& elem : inst) {
      if (auto err = check(schema["items"], elem, path + "/" + std::to_string(i))) return err;
      ++i;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> schema_violation(const nlohmann::json& schema,
                                            const nlohmann::json& instance) {
  return check(schema, instance, "");
}

}  // namespace pairkit
