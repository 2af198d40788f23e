#include "veriscale/builtin_backend.hpp"

#include <algorithm>
#include <cctype>

#include "veriscale/errors.hpp"
#include "veriscale/lean_text.hpp"

namespace veriscale {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// The UTF-8 bytes of '¬'.
constexpr char kNegByte0 = '\xc2';
constexpr char kNegByte1 = '\xac';

}  // namespace

ParsedApp parse_application(const std::string& expr) {
  ParsedApp app;
  std::size_t i = 0;
  const std::size_t n = expr.size();
  auto skip_spaces = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };

  skip_spaces();
  if (i + 1 < n && expr[i] == kNegByte0 && expr[i + 1] == kNegByte1) {
    app.negated = true;
    i += 2;
    skip_spaces();
  }

  std::size_t name_start = i;
  while (i < n && is_name_char(expr[i])) ++i;
  if (i == name_start) throw SyntaxError("expected a name in expression: " + expr);
  app.name = expr.substr(name_start, i - name_start);

  for (;;) {
    skip_spaces();
    if (i >= n) break;
    if (expr[i] != '(') throw SyntaxError("expected '(' in expression: " + expr);
    std::size_t start = ++i;
    int depth = 1;
    while (i < n && depth > 0) {
      char c = expr[i];
      if (c == '"' || c == '\'') {
        char quote = c;
        ++i;
        while (i < n) {
          if (expr[i] == '\\') {
            i += 2;
            continue;
          }
          if (expr[i] == quote) break;
          ++i;
        }
        if (i >= n) throw SyntaxError("unterminated literal in expression: " + expr);
        ++i;
        continue;
      }
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      ++i;
    }
    if (depth != 0) throw SyntaxError("unbalanced parentheses in expression: " + expr);
    app.args.push_back(trim(expr.substr(start, i - start - 1)));
  }
  return app;
}

BuiltinBackend::BuiltinBackend() {
  for (const ToyTask& t : builtin_tasks()) {
    for (const std::string* src : {&t.precond_text, &t.postcond_text, &t.candidate_precond_text,
                                   &t.candidate_postcond_text}) {
      CompiledProp prop;
      ProbeOutcome out = compile_prop(*src, prop);
      if (out.status != ProbeStatus::Pass)
        throw Error("bundled prop failed to compile: " + out.detail);
      props_[parse_def_header(*src).name] = std::move(prop);
    }
    auto bind = [&](const NamedImpl& ni) {
      ImplSpec spec;
      ProbeOutcome out = resolve_impl(ni.source, spec);
      if (out.status != ProbeStatus::Pass)
        throw Error("bundled impl failed to compile: " + out.detail);
      impls_[ni.name] = std::move(spec);
    };
    bind(t.reference);
    for (const NamedImpl& ni : t.adversarial) bind(ni);
  }
  // Timeout fixture: a diverging function that every run budget expires on.
  ImplSpec spin;
  spin.signature.params = {{"n", ValueType::Nat}};
  spin.output_type = ValueType::Nat;
  spin.fn = [](const InputMap&) {
    return RunOutcome{RunStatus::Timeout, std::nullopt, "execution budget exhausted"};
  };
  impls_["spinForever"] = std::move(spin);
}

ProbeOutcome BuiltinBackend::compile_prop(const std::string& source, CompiledProp& out) const {
  DefHeader header = parse_def_header(source);
  if (header.return_type != "Prop")
    return {ProbeStatus::Fail, "definition " + header.name + " is not a Prop"};
  CompiledProp prop;
  for (const auto& [pname, ptype] : header.params) {
    auto vt = type_from_name(ptype);
    if (!vt) return {ProbeStatus::Fail, "unknown type '" + ptype + "' in " + header.name};
    prop.signature.params.push_back({pname, *vt});
  }
  const auto& table = builtin_clause_table();
  for (const std::string& raw : split_top_level_conjuncts(header.body)) {
    std::string clause = normalize_spaces(raw);
    auto it = table.find(clause);
    if (it == table.end())
      return {ProbeStatus::Fail,
              "elaboration failed in " + header.name + ": unsupported clause '" + clause + "'"};
    prop.clause_texts.push_back(clause);
    prop.clauses.push_back(it->second);
  }
  out = std::move(prop);
  return {ProbeStatus::Pass, ""};
}

ProbeOutcome BuiltinBackend::resolve_impl(const std::string& source, ImplSpec& out) const {
  DefHeader header = parse_def_header(source);
  if (header.return_type == "Prop")
    return {ProbeStatus::Fail, "definition " + header.name + " is a Prop, not an implementation"};
  auto ret = type_from_name(header.return_type);
  if (!ret)
    return {ProbeStatus::Fail, "unknown return type '" + header.return_type + "' in " + header.name};
  for (const auto& [pname, ptype] : header.params) {
    if (!type_from_name(ptype))
      return {ProbeStatus::Fail, "unknown type '" + ptype + "' in " + header.name};
  }
  const auto& table = builtin_impl_table();
  auto it = table.find(impl_table_key(header.raw_params, header.return_type, header.body));
  if (it == table.end())
    return {ProbeStatus::Fail, "elaboration failed in " + header.name +
                                   ": body is outside the bundled implementation vocabulary"};
  out = it->second;
  return {ProbeStatus::Pass, ""};
}

ProbeOutcome BuiltinBackend::check_application(const std::string& expr) const {
  ParsedApp app;
  try {
    app = parse_application(expr);
  } catch (const SyntaxError& e) {
    return {ProbeStatus::Fail, e.what()};
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto pit = props_.find(app.name);
  if (pit != props_.end()) {
    try {
      (void)bind_arguments(pit->second, app.args);
    } catch (const Error& e) {
      return {ProbeStatus::Fail, e.what()};
    }
    return {ProbeStatus::Pass, ""};
  }
  auto iit = impls_.find(app.name);
  if (iit != impls_.end()) {
    const ParamSignature& sig = iit->second.signature;
    if (app.negated) return {ProbeStatus::Fail, "cannot negate a non-Prop application"};
    if (app.args.size() != sig.params.size())
      return {ProbeStatus::Fail, "arity mismatch for " + app.name};
    for (std::size_t i = 0; i < app.args.size(); ++i) {
      try {
        (void)parse_value(app.args[i], sig.params[i].type);
      } catch (const Error& e) {
        return {ProbeStatus::Fail, e.what()};
      }
    }
    return {ProbeStatus::Pass, ""};
  }
  return {ProbeStatus::Fail, "unknown constant '" + app.name + "'"};
}

InputMap BuiltinBackend::bind_arguments(const CompiledProp& prop,
                                        const std::vector<std::string>& args) const {
  if (args.size() != prop.signature.params.size())
    throw SyntaxError("arity mismatch: expected " + std::to_string(prop.signature.params.size()) +
                      " arguments, got " + std::to_string(args.size()));
  InputMap env;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Param& p = prop.signature.params[i];
    env.emplace(p.name, parse_value(args[i], p.type));
  }
  return env;
}

ProbeOutcome BuiltinBackend::check_syntax(const std::string& source) {
  std::string text = trim(source);
  if (text.rfind("def ", 0) == 0) {
    DefHeader header;
    try {
      header = parse_def_header(text);
    } catch (const SyntaxError& e) {
      return {ProbeStatus::Fail, e.what()};
    }
    if (header.return_type == "Prop") {
      CompiledProp prop;
      ProbeOutcome out;
      try {
        out = compile_prop(text, prop);
      } catch (const SyntaxError& e) {
        return {ProbeStatus::Fail, e.what()};
      }
      if (out.status != ProbeStatus::Pass) return out;
      std::lock_guard<std::mutex> lock(mutex_);
      props_[header.name] = std::move(prop);
      return {ProbeStatus::Pass, ""};
    }
    ImplSpec spec;
    try {
      return resolve_impl(text, spec);
    } catch (const SyntaxError& e) {
      return {ProbeStatus::Fail, e.what()};
    }
  }
  return check_application(text);
}

ProbeOutcome BuiltinBackend::guard_decide(const std::string& expr, bool negated, int) {
  ParsedApp app;
  try {
    app = parse_application(expr);
  } catch (const SyntaxError& e) {
    return {ProbeStatus::Fail, e.what()};
  }
  CompiledProp prop;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = props_.find(app.name);
    if (it == props_.end()) return {ProbeStatus::Fail, "unknown constant '" + app.name + "'"};
    prop = it->second;
  }
  InputMap env;
  try {
    env = bind_arguments(prop, app.args);
  } catch (const Error& e) {
    return {ProbeStatus::Fail, e.what()};
  }
  bool truth = true;
  try {
    for (const ClauseFn& clause : prop.clauses)
      if (!clause(env)) {
        truth = false;
        break;
      }
  } catch (const std::exception& e) {
    return {ProbeStatus::Fail, std::string("decide failed: ") + e.what()};
  }
  if (app.negated) truth = !truth;
  if (negated) truth = !truth;
  if (truth) return {ProbeStatus::Pass, ""};
  return {ProbeStatus::Fail, "decide reduced the guard to false"};
}

ProbeOutcome BuiltinBackend::plausible_probe(const std::string& expr, bool negated,
                                             const std::string& unfold_name, int timeout_ms) {
  if (!unfold_name.empty()) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (props_.find(unfold_name) == props_.end() && impls_.find(unfold_name) == impls_.end())
      return {ProbeStatus::Fail, "unknown constant '" + unfold_name + "'"};
  }
  // The goal is ground, so the property search degenerates to evaluation: a
  // false goal yields an immediate counterexample, a true one finds nothing.
  ProbeOutcome decided = guard_decide(expr, negated, timeout_ms);
  if (decided.status == ProbeStatus::Pass)
    return {ProbeStatus::Pass, "plausible found no counterexample"};
  if (decided.detail.rfind("decide reduced", 0) == 0)
    return {ProbeStatus::Counterexample, "plausible found a counterexample"};
  return decided;
}

RunOutcome BuiltinBackend::run(const std::string& impl_ref, const InputMap& input, int) {
  ImplSpec spec;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = impls_.find(impl_ref);
    if (it == impls_.end())
      return RunOutcome{RunStatus::RuntimeFailure, std::nullopt,
                        "unknown implementation '" + impl_ref + "'"};
    spec = it->second;
  }
  if (!binds_signature(input, spec.signature))
    return RunOutcome{RunStatus::RuntimeFailure, std::nullopt,
                      "input does not bind the implementation signature"};
  try {
    return spec.fn(input);
  } catch (const std::exception& e) {
    return RunOutcome{RunStatus::RuntimeFailure, std::nullopt, e.what()};
  }
}

ProbeOutcome BuiltinBackend::register_impl(const std::string& ref, const std::string& source) {
  if (ref.empty()) return {ProbeStatus::Fail, "empty implementation ref"};
  ImplSpec spec;
  ProbeOutcome out;
  try {
    out = resolve_impl(trim(source), spec);
  } catch (const SyntaxError& e) {
    return {ProbeStatus::Fail, e.what()};
  }
  if (out.status != ProbeStatus::Pass) return out;
  std::lock_guard<std::mutex> lock(mutex_);
  impls_[ref] = std::move(spec);
  return {ProbeStatus::Pass, ""};
}

bool BuiltinBackend::has_prop(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return props_.count(name) > 0;
}

bool BuiltinBackend::has_impl(const std::string& ref) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return impls_.count(ref) > 0;
}

}  // namespace veriscale
