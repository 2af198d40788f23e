#include "veriscale/value.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "json.hpp"
#include "veriscale/errors.hpp"

namespace veriscale {

namespace {

struct TypeNameRow {
  ValueType type;
  std::string_view name;
};

constexpr std::array<TypeNameRow, 8> kTypeNames{{
    {ValueType::Int, "Int"},
    {ValueType::Nat, "Nat"},
    {ValueType::ListInt, "List Int"},
    {ValueType::ArrayInt, "Array Int"},
    {ValueType::ListNat, "List Nat"},
    {ValueType::ArrayNat, "Array Nat"},
    {ValueType::ListChar, "List Char"},
    {ValueType::String, "String"},
}};

}  // namespace

bool is_nat_family(ValueType t) {
  return t == ValueType::Nat || t == ValueType::ListNat || t == ValueType::ArrayNat;
}

bool is_sequence(ValueType t) { return t != ValueType::Int && t != ValueType::Nat; }

bool is_numeric_sequence(ValueType t) {
  return t == ValueType::ListInt || t == ValueType::ArrayInt || t == ValueType::ListNat ||
         t == ValueType::ArrayNat;
}

bool is_char_sequence(ValueType t) {
  return t == ValueType::ListChar || t == ValueType::String;
}

bool is_array(ValueType t) { return t == ValueType::ArrayInt || t == ValueType::ArrayNat; }

std::string_view type_name(ValueType t) {
  for (const auto& row : kTypeNames) {
    if (row.type == t) return row.name;
  }
  return "?";
}

std::optional<ValueType> type_from_name(std::string_view name) {
  for (const auto& row : kTypeNames) {
    if (row.name == name) return row.type;
  }
  return std::nullopt;
}

bool is_allowed_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 0x20 && u <= 0x7e) || c == '\n' || c == '\t';
}

const std::string& mutation_alphabet() {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789 ";
  return alphabet;
}

const std::string& special_alphabet() {
  static const std::string alphabet = "!?#@ \n\t\"\\";
  return alphabet;
}

// ---- Value factories ----

Value Value::make_int(std::int64_t v) { return Value(ValueType::Int, v); }

Value Value::make_nat(std::int64_t v) {
  if (v < 0) throw TypeMismatch("Nat value must be non-negative, got " + std::to_string(v));
  return Value(ValueType::Nat, v);
}

Value Value::make_sequence(ValueType t, std::vector<std::int64_t> elems) {
  if (!is_numeric_sequence(t)) {
    throw TypeMismatch(std::string("not a numeric sequence type: ") + std::string(type_name(t)));
  }
  if (is_nat_family(t)) {
    for (std::int64_t e : elems) {
      if (e < 0) {
        throw TypeMismatch(std::string(type_name(t)) + " element must be non-negative, got " +
                           std::to_string(e));
      }
    }
  }
  return Value(t, std::move(elems));
}

Value Value::make_chars(ValueType t, std::string chars) {
  if (!is_char_sequence(t)) {
    throw TypeMismatch(std::string("not a character sequence type: ") +
                       std::string(type_name(t)));
  }
  for (char c : chars) {
    if (!is_allowed_char(c)) {
      throw TypeMismatch("character out of the allowed range (code " +
                         std::to_string(static_cast<int>(static_cast<unsigned char>(c))) + ")");
    }
  }
  return Value(t, std::move(chars));
}

std::int64_t Value::as_int() const {
  if (const auto* v = std::get_if<std::int64_t>(&payload_)) return *v;
  throw TypeMismatch("value is not a scalar");
}

const std::vector<std::int64_t>& Value::as_ints() const {
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&payload_)) return *v;
  throw TypeMismatch("value is not a numeric sequence");
}

const std::string& Value::as_chars() const {
  if (const auto* v = std::get_if<std::string>(&payload_)) return *v;
  throw TypeMismatch("value is not a character sequence");
}

std::size_t Value::size() const {
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&payload_)) return v->size();
  if (const auto* v = std::get_if<std::string>(&payload_)) return v->size();
  throw TypeMismatch("scalar value has no size");
}

// ---- rendering ----

namespace {

void append_escaped_char(std::string& out, char c, char quote) {
  switch (c) {
    case '\n': out += "\\n"; return;
    case '\t': out += "\\t"; return;
    case '\\': out += "\\\\"; return;
    default:
      if (c == quote) {
        out += '\\';
        out += c;
      } else {
        out += c;
      }
      return;
  }
}

std::string render_string_literal(const std::string& chars) {
  std::string out = "\"";
  for (char c : chars) append_escaped_char(out, c, '"');
  out += '"';
  return out;
}

std::string render_char_literal(char c, RenderStyle style) {
  if (style == RenderStyle::Prover) {
    std::string out = "'";
    append_escaped_char(out, c, '\'');
    out += '\'';
    return out;
  }
  std::string out = "\"";
  append_escaped_char(out, c, '"');
  out += '"';
  return out;
}

}  // namespace

std::string render_value(const Value& v, RenderStyle style) {
  switch (v.type()) {
    case ValueType::Int:
    case ValueType::Nat:
      return std::to_string(v.as_int());
    case ValueType::String:
      return render_string_literal(v.as_chars());
    case ValueType::ListChar: {
      std::string out = "[";
      const std::string& cs = v.as_chars();
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i > 0) out += ", ";
        out += render_char_literal(cs[i], style);
      }
      out += ']';
      return out;
    }
    default: {
      std::string out;
      if (style == RenderStyle::Prover && is_array(v.type())) out += '#';
      out += '[';
      const auto& xs = v.as_ints();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(xs[i]);
      }
      out += ']';
      return out;
    }
  }
}

// ---- parsing ----

namespace {

// Minimal recursive-descent reader over the literal grammar. Accepts both
// render styles: '#[..]' sequence prefixes and both char spellings.
struct LiteralParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r')) {
      ++pos;
    }
  }

  bool try_consume(char c) {
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void consume(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  std::int64_t parse_int() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) fail("expected integer literal");
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
    if (ec != std::errc() || ptr != text.data() + pos) fail("integer out of range");
    return value;
  }

  char parse_escape(char quote) {
    // pos is just past the backslash.
    if (pos >= text.size()) fail("dangling escape");
    char c = text[pos++];
    switch (c) {
      case 'n': return '\n';
      case 't': return '\t';
      case '\\': return '\\';
      case '\'': return '\'';
      case '"': return '"';
      default:
        (void)quote;
        fail("unsupported escape sequence");
    }
  }

  char parse_char_literal() {
    skip_ws();
    if (pos >= text.size()) fail("expected character literal");
    char quote = text[pos];
    if (quote != '\'' && quote != '"') fail("expected character literal");
    ++pos;
    if (pos >= text.size()) fail("unterminated character literal");
    char value;
    if (text[pos] == '\\') {
      ++pos;
      value = parse_escape(quote);
    } else if (text[pos] == quote) {
      fail("empty character literal");
    } else {
      value = text[pos++];
    }
    if (pos >= text.size() || text[pos] != quote) fail("expected single-character literal");
    ++pos;
    return value;
  }

  std::string parse_string_literal() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '"') fail("expected string literal");
    ++pos;
    std::string out;
    while (true) {
      if (pos >= text.size()) fail("unterminated string literal");
      char c = text[pos];
      if (c == '"') {
        ++pos;
        return out;
      }
      ++pos;
      if (c == '\\') {
        out += parse_escape('"');
      } else {
        out += c;
      }
    }
  }

  void open_sequence() {
    skip_ws();
    if (try_consume('#')) {
      consume('[');
      return;
    }
    consume('[');
  }

  template <typename ElemFn>
  void parse_sequence(ElemFn&& elem) {
    open_sequence();
    skip_ws();
    if (try_consume(']')) return;
    while (true) {
      elem();
      skip_ws();
      if (try_consume(']')) return;
      consume(',');
    }
  }

  void expect_end() {
    skip_ws();
    if (pos != text.size()) fail("trailing characters after literal");
  }
};

}  // namespace

Value parse_value(std::string_view text, ValueType expected) {
  LiteralParser p{text};
  switch (expected) {
    case ValueType::Int: {
      std::int64_t v = p.parse_int();
      p.expect_end();
      return Value::make_int(v);
    }
    case ValueType::Nat: {
      std::int64_t v = p.parse_int();
      p.expect_end();
      return Value::make_nat(v);  // throws TypeMismatch when negative
    }
    case ValueType::String: {
      std::string s = p.parse_string_literal();
      p.expect_end();
      return Value::make_chars(ValueType::String, std::move(s));
    }
    case ValueType::ListChar: {
      std::string s;
      p.parse_sequence([&] { s += p.parse_char_literal(); });
      p.expect_end();
      return Value::make_chars(ValueType::ListChar, std::move(s));
    }
    default: {
      std::vector<std::int64_t> xs;
      p.parse_sequence([&] { xs.push_back(p.parse_int()); });
      p.expect_end();
      return Value::make_sequence(expected, std::move(xs));
    }
  }
}

// ---- bindings ----

const Param* ParamSignature::find(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::string canonical_key(const InputMap& input) {
  // Compact tagged JSON with keys in sorted (map) order.
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [name, value] : input) {
    nlohmann::ordered_json tagged;
    tagged["type"] = std::string(type_name(value.type()));
    switch (value.type()) {
      case ValueType::Int:
      case ValueType::Nat:
        tagged["value"] = value.as_int();
        break;
      case ValueType::String:
        tagged["value"] = value.as_chars();
        break;
      case ValueType::ListChar: {
        auto arr = nlohmann::ordered_json::array();
        for (char c : value.as_chars()) arr.push_back(std::string(1, c));
        tagged["value"] = std::move(arr);
        break;
      }
      default:
        tagged["value"] = value.as_ints();
        break;
    }
    doc[name] = std::move(tagged);
  }
  return doc.dump();
}

bool binds_signature(const InputMap& input, const ParamSignature& sig) {
  if (input.size() != sig.params.size()) return false;
  for (const auto& p : sig.params) {
    auto it = input.find(p.name);
    if (it == input.end() || it->second.type() != p.type) return false;
  }
  return true;
}

}  // namespace veriscale
