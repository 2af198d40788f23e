#include "veriscale/lean_text.hpp"

#include <cctype>

#include "veriscale/errors.hpp"

namespace veriscale {

std::string normalize_spaces(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_gap = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_gap = true;
      continue;
    }
    if (in_gap && !out.empty()) out.push_back(' ');
    in_gap = false;
    out.push_back(c);
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

DefHeader parse_def_header(const std::string& source) {
  std::string text = trim(source);
  if (text.rfind("def ", 0) != 0) throw SyntaxError("definition must start with 'def '");
  size_t pos = 4;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  size_t name_start = pos;
  while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
         text[pos] != '(' && text[pos] != ':')
    ++pos;
  DefHeader header;
  header.name = text.substr(name_start, pos - name_start);
  if (header.name.empty()) throw SyntaxError("definition has no name");

  // Walk the parameter groups "(name : Type)" up to the top-level ':' that
  // introduces the return type.
  size_t params_start = pos;
  int depth = 0;
  size_t colon = std::string::npos;
  for (size_t i = pos; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[' || c == '{')
      ++depth;
    else if (c == ')' || c == ']' || c == '}')
      --depth;
    else if (c == ':' && depth == 0) {
      if (i + 1 < text.size() && text[i + 1] == '=')
        throw SyntaxError("definition missing return type before ':='");
      colon = i;
      break;
    }
  }
  if (colon == std::string::npos) throw SyntaxError("definition missing return type");
  header.raw_params = trim(text.substr(params_start, colon - params_start));

  size_t assign = text.find(":=", colon);
  if (assign == std::string::npos) throw SyntaxError("definition missing ':='");
  header.return_type = trim(text.substr(colon + 1, assign - colon - 1));
  if (header.return_type.empty()) throw SyntaxError("empty return type");
  header.body = trim(text.substr(assign + 2));
  if (header.body.empty()) throw SyntaxError("empty definition body");

  // Decompose "(a : T) (b : U)" into pairs.
  const std::string& raw = header.raw_params;
  size_t i = 0;
  while (i < raw.size()) {
    if (std::isspace(static_cast<unsigned char>(raw[i]))) {
      ++i;
      continue;
    }
    if (raw[i] != '(') throw SyntaxError("parameter group must start with '(': " + raw);
    int d = 1;
    size_t j = i + 1;
    while (j < raw.size() && d > 0) {
      if (raw[j] == '(')
        ++d;
      else if (raw[j] == ')')
        --d;
      ++j;
    }
    if (d != 0) throw SyntaxError("unbalanced parameter parentheses");
    std::string group = raw.substr(i + 1, j - i - 2);  // without outer parens
    size_t gc = group.find(':');
    if (gc == std::string::npos) throw SyntaxError("parameter group missing ':': " + group);
    std::string names = trim(group.substr(0, gc));
    std::string type = trim(group.substr(gc + 1));
    if (names.empty() || type.empty()) throw SyntaxError("malformed parameter group: " + group);
    // "(a b : Int)" declares several names of one type.
    size_t k = 0;
    while (k < names.size()) {
      while (k < names.size() && std::isspace(static_cast<unsigned char>(names[k]))) ++k;
      size_t ns = k;
      while (k < names.size() && !std::isspace(static_cast<unsigned char>(names[k]))) ++k;
      if (k > ns) header.params.emplace_back(names.substr(ns, k - ns), type);
    }
    i = j;
  }
  return header;
}

std::vector<std::string> split_top_level_conjuncts(const std::string& body) {
  // "∧" is UTF-8 0xE2 0x88 0xA7.
  static const std::string kAnd = "\xe2\x88\xa7";
  std::vector<std::string> clauses;
  int depth = 0;
  bool in_string = false;
  bool in_char = false;
  size_t clause_start = 0;
  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (in_string) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (in_char) {
      if (c == '\\')
        ++i;
      else if (c == '\'')
        in_char = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '\'') {
      in_char = true;
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      --depth;
    } else if (depth == 0 && body.compare(i, kAnd.size(), kAnd) == 0) {
      clauses.push_back(trim(body.substr(clause_start, i - clause_start)));
      i += kAnd.size() - 1;
      clause_start = i + 1;
    }
  }
  clauses.push_back(trim(body.substr(clause_start)));
  return clauses;
}

std::string render_def(const std::string& name, const std::string& raw_params,
                       const std::string& return_type, const std::string& body) {
  std::string out = "def " + name;
  if (!raw_params.empty()) out += " " + raw_params;
  out += " : " + return_type + " :=\n  " + body;
  return out;
}

}  // namespace veriscale
