#include "veriscale/json_io.hpp"

#include <fstream>
#include <set>
#include <unordered_set>

#include "veriscale/errors.hpp"

namespace veriscale {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// ---- value <-> JSON ----

ordered_json value_to_json(const Value& v) {
  ordered_json out;
  out["type"] = std::string(type_name(v.type()));
  out["value"] = value_to_untyped_json(v);
  return out;
}

ordered_json value_to_untyped_json(const Value& v) {
  switch (v.type()) {
    case ValueType::Int:
    case ValueType::Nat:
      return v.as_int();
    case ValueType::String:
      return v.as_chars();
    case ValueType::ListChar: {
      auto arr = ordered_json::array();
      for (char c : v.as_chars()) arr.push_back(std::string(1, c));
      return arr;
    }
    default:
      return ordered_json(v.as_ints());
  }
}

Value value_from_untyped_json(const json& j, ValueType expected) {
  switch (expected) {
    case ValueType::Int:
    case ValueType::Nat: {
      if (!j.is_number_integer()) throw TypeMismatch("expected an integer");
      std::int64_t v = j.get<std::int64_t>();
      return expected == ValueType::Int ? Value::make_int(v) : Value::make_nat(v);
    }
    case ValueType::String: {
      if (!j.is_string()) throw TypeMismatch("expected a string");
      return Value::make_chars(ValueType::String, j.get<std::string>());
    }
    case ValueType::ListChar: {
      if (!j.is_array()) throw TypeMismatch("expected an array of one-character strings");
      std::string chars;
      for (const auto& e : j) {
        if (!e.is_string() || e.get<std::string>().size() != 1) {
          throw TypeMismatch("expected a one-character string element");
        }
        chars += e.get<std::string>()[0];
      }
      return Value::make_chars(ValueType::ListChar, std::move(chars));
    }
    default: {
      if (!j.is_array()) throw TypeMismatch("expected an array of integers");
      std::vector<std::int64_t> xs;
      xs.reserve(j.size());
      for (const auto& e : j) {
        if (!e.is_number_integer()) throw TypeMismatch("expected an integer element");
        xs.push_back(e.get<std::int64_t>());
      }
      return Value::make_sequence(expected, std::move(xs));
    }
  }
}

Value value_from_json(const json& j, const std::string& pointer) {
  if (!j.is_object() || !j.contains("type") || !j.contains("value")) {
    throw SchemaError(pointer, "expected a tagged value object {\"type\", \"value\"}");
  }
  if (!j["type"].is_string()) throw SchemaError(pointer + "/type", "expected a string");
  auto t = type_from_name(j["type"].get<std::string>());
  if (!t) throw UnknownType(pointer + "/type: unknown type '" + j["type"].get<std::string>() + "'");
  try {
    return value_from_untyped_json(j["value"], *t);
  } catch (const TypeMismatch& e) {
    throw SchemaError(pointer + "/value", e.what());
  }
}

// ---- bindings <-> JSON ----

ordered_json input_to_json(const InputMap& input) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, value] : input) out[name] = value_to_json(value);
  return out;
}

InputMap input_from_json(const json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object of bindings");
  InputMap out;
  for (const auto& [name, value] : j.items()) {
    out.emplace(name, value_from_json(value, pointer + "/" + name));
  }
  return out;
}

InputMap input_from_untyped_json(const json& j, const ParamSignature& sig,
                                 const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object of bindings");
  if (j.size() != sig.params.size()) {
    throw SchemaError(pointer, "expected exactly " + std::to_string(sig.params.size()) +
                                   " binding(s), got " + std::to_string(j.size()));
  }
  InputMap out;
  for (const auto& p : sig.params) {
    if (!j.contains(p.name)) throw SchemaError(pointer, "missing binding for '" + p.name + "'");
    try {
      out.emplace(p.name, value_from_untyped_json(j[p.name], p.type));
    } catch (const TypeMismatch& e) {
      throw SchemaError(pointer + "/" + p.name, e.what());
    }
  }
  return out;
}

ordered_json input_to_untyped_json(const InputMap& input, const ParamSignature& sig) {
  ordered_json out = ordered_json::object();
  for (const auto& p : sig.params) {
    auto it = input.find(p.name);
    if (it == input.end()) throw SchemaError("/" + p.name, "input lacks a signature binding");
    out[p.name] = value_to_untyped_json(it->second);
  }
  return out;
}

// ---- files ----

namespace {

json parse_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return doc;
}

const json& require(const json& doc, const char* key, const std::string& pointer) {
  if (!doc.contains(key)) throw SchemaError(pointer, std::string("missing key '") + key + "'");
  return doc[key];
}

std::string require_string(const json& doc, const char* key, const std::string& pointer) {
  const json& v = require(doc, key, pointer);
  if (!v.is_string()) throw SchemaError(pointer + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::string optional_string(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  if (!doc[key].is_string()) throw SchemaError(std::string("/") + key, "expected a string");
  return doc[key].get<std::string>();
}

std::vector<InputMap> load_input_list(const json& doc, const char* key, const ParamSignature& sig,
                                      const std::string& pointer) {
  std::vector<InputMap> out;
  if (!doc.contains(key)) return out;
  const json& arr = doc[key];
  if (!arr.is_array()) throw SchemaError(pointer + "/" + key, "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(
        input_from_untyped_json(arr[i], sig, pointer + "/" + key + "/" + std::to_string(i)));
  }
  return out;
}

}  // namespace

Task load_task(const fs::path& path) {
  json doc = parse_file(path);
  if (!doc.is_object()) throw SchemaError("", "task document must be an object");

  Task task;
  task.id = require_string(doc, "id", "");
  if (task.id.empty()) throw SchemaError("/id", "task id must be non-empty");
  task.description = require_string(doc, "description", "");

  const json& sig = require(doc, "signature", "");
  if (!sig.is_array() || sig.empty()) {
    throw SchemaError("/signature", "expected a non-empty array of parameters");
  }
  std::set<std::string> seen_names;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const std::string ptr = "/signature/" + std::to_string(i);
    if (!sig[i].is_object()) throw SchemaError(ptr, "expected {\"name\", \"type\"}");
    std::string name = require_string(sig[i], "name", ptr);
    std::string tname = require_string(sig[i], "type", ptr);
    auto t = type_from_name(tname);
    if (!t) throw UnknownType(ptr + "/type: unknown type '" + tname + "'");
    if (!seen_names.insert(name).second) {
      throw SchemaError(ptr + "/name", "duplicate parameter name '" + name + "'");
    }
    task.signature.params.push_back({std::move(name), *t});
  }

  std::string out_name = require_string(doc, "output_type", "");
  auto out_type = type_from_name(out_name);
  if (!out_type) throw UnknownType("/output_type: unknown type '" + out_name + "'");
  task.output_type = *out_type;

  task.precond_ref = require_string(doc, "precond_ref", "");
  task.postcond_ref = require_string(doc, "postcond_ref", "");
  task.reference_impl_ref = require_string(doc, "impl_ref", "");

  task.base_expected_inputs = load_input_list(doc, "base_expected_inputs", task.signature, "");
  task.base_unexpected_inputs = load_input_list(doc, "base_unexpected_inputs", task.signature, "");

  task.precond_text = optional_string(doc, "precond_text");
  task.postcond_text = optional_string(doc, "postcond_text");
  task.impl_signature = optional_string(doc, "impl_signature");
  return task;
}

namespace {

IoPair pair_from_json(const json& j, const std::string& pointer) {
  if (!j.is_object() || !j.contains("input") || !j.contains("output")) {
    throw SchemaError(pointer, "expected {\"input\", \"output\"}");
  }
  IoPair pair{input_from_json(j["input"], pointer + "/input"),
              value_from_json(j["output"], pointer + "/output")};
  return pair;
}

ordered_json pair_to_json(const IoPair& pair) {
  ordered_json out;
  out["input"] = input_to_json(pair.input);
  out["output"] = value_to_json(pair.output);
  return out;
}

std::string pair_key(const IoPair& p) {
  return canonical_key(p.input) + "\x1f" + render_value(p.output, RenderStyle::Json) + "\x1f" +
         std::string(type_name(p.output.type()));
}

void reject_duplicates(const TestSuite& suite, const char* context) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < suite.expected_pairs.size(); ++i) {
    if (!seen.insert(pair_key(suite.expected_pairs[i])).second) {
      throw SchemaError("/expected_pairs/" + std::to_string(i),
                        std::string("duplicate entry (") + context + ")");
    }
  }
  seen.clear();
  for (std::size_t i = 0; i < suite.unexpected_inputs.size(); ++i) {
    if (!seen.insert(canonical_key(suite.unexpected_inputs[i])).second) {
      throw SchemaError("/unexpected_inputs/" + std::to_string(i),
                        std::string("duplicate entry (") + context + ")");
    }
  }
  seen.clear();
  for (std::size_t i = 0; i < suite.unexpected_outputs.size(); ++i) {
    if (!seen.insert(pair_key(suite.unexpected_outputs[i])).second) {
      throw SchemaError("/unexpected_outputs/" + std::to_string(i),
                        std::string("duplicate entry (") + context + ")");
    }
  }
}

}  // namespace

TestSuite load_suite(const fs::path& path) {
  json doc = parse_file(path);
  if (!doc.is_object()) throw SchemaError("", "suite document must be an object");
  TestSuite suite;
  if (doc.contains("expected_pairs")) {
    const json& arr = doc["expected_pairs"];
    if (!arr.is_array()) throw SchemaError("/expected_pairs", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      suite.expected_pairs.push_back(pair_from_json(arr[i], "/expected_pairs/" + std::to_string(i)));
    }
  }
  if (doc.contains("unexpected_inputs")) {
    const json& arr = doc["unexpected_inputs"];
    if (!arr.is_array()) throw SchemaError("/unexpected_inputs", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      suite.unexpected_inputs.push_back(
          input_from_json(arr[i], "/unexpected_inputs/" + std::to_string(i)));
    }
  }
  if (doc.contains("unexpected_outputs")) {
    const json& arr = doc["unexpected_outputs"];
    if (!arr.is_array()) throw SchemaError("/unexpected_outputs", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      suite.unexpected_outputs.push_back(
          pair_from_json(arr[i], "/unexpected_outputs/" + std::to_string(i)));
    }
  }
  reject_duplicates(suite, "load");
  return suite;
}

std::string suite_to_string(const TestSuite& suite) {
  reject_duplicates(suite, "save");
  ordered_json doc;
  auto pairs = ordered_json::array();
  for (const auto& p : suite.expected_pairs) pairs.push_back(pair_to_json(p));
  doc["expected_pairs"] = std::move(pairs);
  auto inputs = ordered_json::array();
  for (const auto& m : suite.unexpected_inputs) inputs.push_back(input_to_json(m));
  doc["unexpected_inputs"] = std::move(inputs);
  auto outputs = ordered_json::array();
  for (const auto& p : suite.unexpected_outputs) outputs.push_back(pair_to_json(p));
  doc["unexpected_outputs"] = std::move(outputs);
  return doc.dump(2) + "\n";
}

void save_suite(const TestSuite& suite, const fs::path& path) {
  atomic_write(path, suite_to_string(suite));
}

void atomic_write(const fs::path& path, const std::string& text) {
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw ConfigError("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace veriscale
