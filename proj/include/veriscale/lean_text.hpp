#pragma once

#include <string>
#include <vector>

namespace veriscale {

// Collapses every whitespace run to a single space and trims the ends.
// Used to key definition bodies and clauses structurally.
std::string normalize_spaces(const std::string& text);

// A `def NAME (p : T) ... : RET := BODY` block, split into its parts.
// raw_params keeps the parameter list exactly as written (for re-rendering
// weakened variants); params decomposes it into (name, type-spelling).
struct DefHeader {
  std::string name;
  std::string raw_params;  // "(xs : List Int) (n : Nat)" — may be empty
  std::vector<std::pair<std::string, std::string>> params;
  std::string return_type;  // "Prop", "Nat", "List Int", ...
  std::string body;         // text after ":=", trimmed
};

// Parses a definition block. Throws SyntaxError on malformed input.
DefHeader parse_def_header(const std::string& source);

// Splits a Prop body on top-level ∧ (outside any bracket or string),
// trimming each clause. A body with no top-level ∧ yields one clause.
std::vector<std::string> split_top_level_conjuncts(const std::string& body);

// Renders a def block back from parts: "def NAME RAW_PARAMS : RET :=\n  BODY".
std::string render_def(const std::string& name, const std::string& raw_params,
                       const std::string& return_type, const std::string& body);

}  // namespace veriscale
