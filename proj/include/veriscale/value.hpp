#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace veriscale {

// The eight value types a task parameter or result can take. List and
// Array share payload shapes but are distinct types: a ListInt value never
// compares equal to an ArrayInt value.
enum class ValueType {
  Int,
  Nat,
  ListInt,
  ArrayInt,
  ListNat,
  ArrayNat,
  ListChar,
  String,
};

[[nodiscard]] bool is_nat_family(ValueType t);        // Nat, ListNat, ArrayNat
[[nodiscard]] bool is_sequence(ValueType t);          // everything except Int/Nat
[[nodiscard]] bool is_numeric_sequence(ValueType t);  // List/Array Int/Nat
[[nodiscard]] bool is_char_sequence(ValueType t);     // ListChar, String
[[nodiscard]] bool is_array(ValueType t);             // ArrayInt, ArrayNat

// Canonical spelling used in task files and tagged JSON, e.g. "List Nat".
[[nodiscard]] std::string_view type_name(ValueType t);
// Inverse of type_name; std::nullopt for unknown spellings.
[[nodiscard]] std::optional<ValueType> type_from_name(std::string_view name);

// Characters permitted inside ListChar/String payloads: printable 7-bit
// ASCII plus newline and tab.
[[nodiscard]] bool is_allowed_char(char c);

// Alphabet used by character-sequence mutation schemas: lowercase letters,
// digits, and space (37 symbols).
[[nodiscard]] const std::string& mutation_alphabet();

// Special characters appended by the string mutation schema: puncture
// characters plus whitespace escapes (9 symbols).
[[nodiscard]] const std::string& special_alphabet();

// An immutable typed value. Construct through the factories, which enforce
// the type's domain (Nat family is non-negative element-wise; character
// payloads stay inside the allowed alphabet). Equality is structural and
// includes the type tag.
class Value {
 public:
  static Value make_int(std::int64_t v);
  // Throws TypeMismatch when v < 0.
  static Value make_nat(std::int64_t v);
  // t must be one of the four numeric sequence types. Nat variants throw
  // TypeMismatch on any negative element.
  static Value make_sequence(ValueType t, std::vector<std::int64_t> elems);
  // t must be ListChar or String. Throws TypeMismatch on disallowed bytes.
  static Value make_chars(ValueType t, std::string chars);

  [[nodiscard]] ValueType type() const { return type_; }
  [[nodiscard]] bool is_scalar() const { return !is_sequence(type_); }

  [[nodiscard]] std::int64_t as_int() const;
  [[nodiscard]] const std::vector<std::int64_t>& as_ints() const;
  [[nodiscard]] const std::string& as_chars() const;

  // Number of elements for sequences; throws for scalars.
  [[nodiscard]] std::size_t size() const;

  bool operator==(const Value&) const = default;

 private:
  using Payload = std::variant<std::int64_t, std::vector<std::int64_t>, std::string>;
  Value(ValueType t, Payload p) : type_(t), payload_(std::move(p)) {}

  ValueType type_;
  Payload payload_;
};

// How a value is rendered as literal text.
//   Prover: embeddable in verifier probes ('#[..]' arrays, 'c' chars).
//   Json:   bare JSON value text (arrays are plain '[..]', chars are
//           one-character strings); the surrounding type tag carries the
//           list/array and Int/Nat distinctions.
enum class RenderStyle { Prover, Json };

// Renders v as literal text. parse_value(render_value(v, s), v.type()) == v
// for both styles.
[[nodiscard]] std::string render_value(const Value& v, RenderStyle style);

// Parses literal text against an expected type. Accepts both render styles.
// Throws SyntaxError for malformed text and TypeMismatch when the literal
// is well-formed but outside the expected type's domain.
[[nodiscard]] Value parse_value(std::string_view text, ValueType expected);

// ---- bindings ----

struct Param {
  std::string name;
  ValueType type;
  bool operator==(const Param&) const = default;
};

// Ordered parameter list; order is significant when rendering prompt
// examples and probe applications.
struct ParamSignature {
  std::vector<Param> params;

  [[nodiscard]] const Param* find(std::string_view name) const;
  [[nodiscard]] std::size_t size() const { return params.size(); }
  bool operator==(const ParamSignature&) const = default;
};

// Parameter name -> value. std::map keeps keys sorted, which makes the
// canonical rendering deterministic.
using InputMap = std::map<std::string, Value>;

// Compact tagged-JSON rendering of an InputMap; used as the deduplication
// key and as the lexicographic priority order during reduction.
[[nodiscard]] std::string canonical_key(const InputMap& input);

// True when the map binds exactly the signature's names with matching types.
[[nodiscard]] bool binds_signature(const InputMap& input, const ParamSignature& sig);

// ---- tasks and suites ----

// One benchmark task: a described function with verifier-side handles for
// its ground-truth precondition, postcondition, and reference
// implementation, plus curated starting inputs.
struct Task {
  std::string id;
  std::string description;
  ParamSignature signature;
  ValueType output_type = ValueType::Int;
  std::string precond_ref;
  std::string postcond_ref;
  std::string reference_impl_ref;
  std::vector<InputMap> base_expected_inputs;
  std::vector<InputMap> base_unexpected_inputs;
  // Source text used when prompts need to embed the definitions. Optional
  // in the file; prompt rendering fails without it.
  std::string precond_text;
  std::string postcond_text;
  std::string impl_signature;
};

struct IoPair {
  InputMap input;
  Value output;
  bool operator==(const IoPair&) const = default;
};

// A task's test suite. expected_pairs hold precondition-satisfying inputs
// with reference outputs; unexpected_inputs violate the precondition;
// unexpected_outputs pair an expected input with a wrong output some
// adversarial implementation produced. No duplicates within a category.
// By construction every unexpected_outputs input also satisfies the
// ground-truth precondition (they are harvested from expected pairs).
struct TestSuite {
  std::vector<IoPair> expected_pairs;
  std::vector<InputMap> unexpected_inputs;
  std::vector<IoPair> unexpected_outputs;
  bool operator==(const TestSuite&) const = default;
};

}  // namespace veriscale
