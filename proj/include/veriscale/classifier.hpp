#pragma once

#include <span>
#include <string>
#include <vector>

#include "veriscale/backend.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// Renders a fully applied proposition or function call: the name followed
// by one parenthesized literal per parameter, in signature order. The
// overload with `output` appends it as a final argument (postcondition
// calls take the result last).
[[nodiscard]] std::string render_application(const std::string& name, const ParamSignature& sig,
                                             const InputMap& input);
[[nodiscard]] std::string render_application(const std::string& name, const ParamSignature& sig,
                                             const InputMap& input, const Value& output);

// One backend interaction, kept verbatim for audits.
struct ProbeRecord {
  std::string script;  // the probe exactly as a prover file would state it
  ProbeStatus status = ProbeStatus::Fail;
  std::string detail;
};

// How far the engine got before it could rule.
enum class ProbeStage { Syntax, Decide, Plausible };

[[nodiscard]] const char* probe_stage_name(ProbeStage s);

enum class Decision { Holds, Refuted, Inconsistent, Unknown };

[[nodiscard]] const char* decision_name(Decision d);

struct PropProbe {
  Decision decision = Decision::Unknown;
  ProbeStage stage = ProbeStage::Syntax;
  std::vector<ProbeRecord> transcript;
};

// Decides a ground proposition with escalating effort:
//   0. syntax filter        — `#check expr`; any failure ends at Unknown.
//   1. kernel decision      — `#guard decide` on expr and on ¬ expr. Only a
//      Pass rules: positive ⇒ Holds, negative ⇒ Refuted, both ⇒
//      Inconsistent. A stage-1 ruling skips stage 2 entirely.
//   2. property search      — `plausible` on both polarities; a
//      counterexample against ¬ expr ⇒ Holds, against expr ⇒ Refuted,
//      both ⇒ Inconsistent, neither ⇒ Unknown.
// `unfold_name` is the definition the stage-2 tactic block unfolds.
[[nodiscard]] PropProbe decide_prop(VerifierBackend& backend, const std::string& expr,
                                    const std::string& unfold_name, int timeout_ms);

enum class InputClass { Expected, Unexpected, Unknown };

[[nodiscard]] const char* input_class_name(InputClass c);

struct Verdict {
  InputClass value = InputClass::Unknown;
  ProbeStage stage = ProbeStage::Syntax;
  std::vector<ProbeRecord> transcript;
};

struct ClassifierConfig {
  int probe_timeout_ms = 10000;
};

// Classifies one candidate against the task's precondition. Throws
// BackendInconsistency when both polarities of a probe succeed.
[[nodiscard]] Verdict classify(VerifierBackend& backend, const Task& task, const InputMap& input,
                               const ClassifierConfig& cfg = {});

struct ClassificationResult {
  std::vector<InputMap> expected_inputs;
  std::vector<InputMap> unexpected_inputs;
  std::vector<Verdict> verdicts;  // parallel to the candidate span
  std::size_t dropped = 0;        // candidates ending at Unknown
};

// Classifies every candidate. Individual backend inconsistencies are
// collected and rethrown together as AggregateBackendError once the pass
// is complete; transport-level errors propagate immediately. On success
// expected + unexpected + dropped == candidates.
[[nodiscard]] ClassificationResult classify_all(VerifierBackend& backend, const Task& task,
                                                std::span<const InputMap> candidates,
                                                const ClassifierConfig& cfg = {});

struct CompletedPairs {
  std::vector<IoPair> pairs;
  std::vector<std::string> skipped;  // "input <key>: <reason>" per casualty
};

// Runs the task's reference implementation over the expected inputs.
// Runtime failures and timeouts skip the input (logged), never abort.
[[nodiscard]] CompletedPairs complete_expected_pairs(Executor& executor, const Task& task,
                                                     std::span<const InputMap> expected_inputs,
                                                     int timeout_ms = 10000);

}  // namespace veriscale
