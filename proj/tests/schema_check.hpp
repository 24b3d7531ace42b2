#pragma once

// Minimal validator for the keyword subset the published report schema uses:
// type, const, enum, required, properties, items, additionalProperties,
// oneOf, $ref (into #/definitions only). Test-only code.

#include <json.hpp>

#include <string>

namespace schema_check {

using json = nlohmann::json;

inline bool validate(const json& schema, const json& value, const json& root, std::string& why);

inline const json& resolve(const json& schema, const json& root) {
    if (schema.contains("$ref")) {
        std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) == 0) return root["definitions"][ref.substr(prefix.size())];
    }
    return schema;
}

inline bool type_matches(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

inline bool validate(const json& schema_in, const json& value, const json& root, std::string& why) {
    const json& schema = resolve(schema_in, root);
    if (schema.is_object() && schema.empty()) return true;  // {} accepts anything

    if (schema.contains("oneOf")) {
        int matches = 0;
        for (const auto& sub : schema["oneOf"]) {
            std::string ignored;
            if (validate(sub, value, root, ignored)) ++matches;
        }
        if (matches != 1) {
            why = "oneOf matched " + std::to_string(matches) + " branches";
            return false;
        }
        return true;
    }
    if (schema.contains("const")) {
        if (schema["const"] != value) {
            why = "const mismatch: " + value.dump();
            return false;
        }
        return true;
    }
    if (schema.contains("enum")) {
        for (const auto& e : schema["enum"])
            if (e == value) return true;
        why = "enum mismatch: " + value.dump();
        return false;
    }
    if (schema.contains("type")) {
        std::string t = schema["type"].get<std::string>();
        if (!type_matches(t, value)) {
            why = "expected " + t + ", got " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!value.contains(key.get<std::string>())) {
                    why = "missing required key " + key.get<std::string>();
                    return false;
                }
            }
        }
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        bool extra_ok = !schema.contains("additionalProperties") ||
                        schema["additionalProperties"].get<bool>();
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props && props->contains(it.key())) {
                if (!validate((*props)[it.key()], it.value(), root, why)) {
                    why = it.key() + ": " + why;
                    return false;
                }
            } else if (!extra_ok) {
                why = "unexpected key " + it.key();
                return false;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (const auto& e : value) {
            if (!validate(schema["items"], e, root, why)) {
                why = "item: " + why;
                return false;
            }
        }
    }
    return true;
}

inline bool validate_report(const json& schema, const json& envelope, std::string& why) {
    return validate(schema, envelope, schema, why);
}

}  // namespace schema_check
