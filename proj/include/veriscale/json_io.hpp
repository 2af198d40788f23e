#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// ---- value <-> JSON ----

// Tagged encoding used in suite files: {"type": "List Nat", "value": [...]}.
// Characters are encoded as one-character strings.
[[nodiscard]] nlohmann::ordered_json value_to_json(const Value& v);

// Parses the tagged encoding. `pointer` names the location for SchemaError.
[[nodiscard]] Value value_from_json(const nlohmann::json& j, const std::string& pointer);

// Parses a bare JSON value (no type tag) against an expected type, as found
// in task files and model responses where the signature fixes the types.
// Throws TypeMismatch when the JSON shape or domain does not fit.
[[nodiscard]] Value value_from_untyped_json(const nlohmann::json& j, ValueType expected);

// Bare rendering of one value (inverse of value_from_untyped_json).
[[nodiscard]] nlohmann::ordered_json value_to_untyped_json(const Value& v);

// ---- bindings <-> JSON ----

// Tagged object keyed by parameter name, keys sorted.
[[nodiscard]] nlohmann::ordered_json input_to_json(const InputMap& input);
[[nodiscard]] InputMap input_from_json(const nlohmann::json& j, const std::string& pointer);

// Bare object with values resolved against the signature; keys must match
// the signature names exactly. Throws SchemaError on any deviation.
[[nodiscard]] InputMap input_from_untyped_json(const nlohmann::json& j, const ParamSignature& sig,
                                               const std::string& pointer);

// Bare object with keys in signature order (used when embedding example
// inputs into prompts).
[[nodiscard]] nlohmann::ordered_json input_to_untyped_json(const InputMap& input,
                                                           const ParamSignature& sig);

// ---- files ----

// Loads and validates a task document. Throws SchemaError/UnknownType with
// JSON-pointer locations; file-level problems raise ConfigError.
[[nodiscard]] Task load_task(const std::filesystem::path& path);

// Suite files round-trip byte-for-byte: fixed key order, fixed array order,
// two-space indentation, trailing newline.
[[nodiscard]] TestSuite load_suite(const std::filesystem::path& path);
[[nodiscard]] std::string suite_to_string(const TestSuite& suite);
void save_suite(const TestSuite& suite, const std::filesystem::path& path);

// Writes text to path atomically (temp file in the same directory, then
// rename), creating parent directories as needed.
void atomic_write(const std::filesystem::path& path, const std::string& text);

}  // namespace veriscale
