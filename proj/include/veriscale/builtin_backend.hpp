#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "veriscale/backend.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// A fully applied proposition or implementation call, e.g.
//   ¬ insertionSort_postcond ([3, 1]) ([1, 3])
struct ParsedApp {
  bool negated = false;
  std::string name;
  std::vector<std::string> args;  // raw literal text, outer parens stripped
};

// Parses `['¬'] name ('(' literal ')')*`. Throws SyntaxError on anything else.
ParsedApp parse_application(const std::string& expr);

// Desk-scale verifier/executor over the compiled-in task library. Definition
// sources "compile" by matching their clauses (Prop defs) or their normalized
// parameter/body shape (implementations) against the bundled tables; fully
// applied propositions are decided by evaluating the matched clause
// semantics. Prop defs register themselves on a successful check_syntax so
// later probes can refer to them by name; implementations only bind an
// executable when register_impl assigns them a ref.
class BuiltinBackend : public VerifierBackend, public Executor, public ImplRegistry {
 public:
  BuiltinBackend();

  ProbeOutcome check_syntax(const std::string& source) override;
  ProbeOutcome guard_decide(const std::string& expr, bool negated, int timeout_ms) override;
  ProbeOutcome plausible_probe(const std::string& expr, bool negated,
                               const std::string& unfold_name, int timeout_ms) override;

  RunOutcome run(const std::string& impl_ref, const InputMap& input, int timeout_ms) override;

  ProbeOutcome register_impl(const std::string& ref, const std::string& source) override;

  [[nodiscard]] bool has_prop(const std::string& name) const;
  [[nodiscard]] bool has_impl(const std::string& ref) const;

 private:
  struct CompiledProp {
    ParamSignature signature;
    std::vector<std::string> clause_texts;
    std::vector<ClauseFn> clauses;
  };

  // Throws SyntaxError when the def is malformed; returns a Fail outcome
  // when it is well-formed but outside the bundled clause vocabulary.
  ProbeOutcome compile_prop(const std::string& source, CompiledProp& out) const;
  ProbeOutcome resolve_impl(const std::string& source, ImplSpec& out) const;
  ProbeOutcome check_application(const std::string& expr) const;

  // Binds literal argument text to the prop's parameters. Throws SyntaxError.
  InputMap bind_arguments(const CompiledProp& prop, const std::vector<std::string>& args) const;

  mutable std::mutex mutex_;
  std::map<std::string, CompiledProp> props_;
  std::map<std::string, ImplSpec> impls_;
};

}  // namespace veriscale
