#include "veriscale/classifier.hpp"

#include "veriscale/errors.hpp"

namespace veriscale {

namespace {

std::string render_args(const ParamSignature& sig, const InputMap& input) {
  std::string out;
  for (const Param& p : sig.params) {
    auto it = input.find(p.name);
    if (it == input.end()) throw TypeMismatch("input does not bind parameter '" + p.name + "'");
    out += " (" + render_value(it->second, RenderStyle::Prover) + ")";
  }
  return out;
}

std::string check_script(const std::string& expr) { return "#check " + expr; }

std::string guard_script(const std::string& expr, bool negated) {
  if (negated) return "#guard decide (\xc2\xac " + expr + ")";
  return "#guard decide (" + expr + ")";
}

std::string plausible_script(const std::string& expr, bool negated,
                             const std::string& unfold_name) {
  std::string goal = negated ? "\xc2\xac " + expr : expr;
  return "example: " + goal + " := by\n  unfold " + unfold_name + "\n  simp_all!\n  plausible";
}

}  // namespace

std::string render_application(const std::string& name, const ParamSignature& sig,
                               const InputMap& input) {
  return name + render_args(sig, input);
}

std::string render_application(const std::string& name, const ParamSignature& sig,
                               const InputMap& input, const Value& output) {
  return name + render_args(sig, input) + " (" + render_value(output, RenderStyle::Prover) + ")";
}

const char* probe_stage_name(ProbeStage s) {
  switch (s) {
    case ProbeStage::Syntax: return "syntax";
    case ProbeStage::Decide: return "decide";
    case ProbeStage::Plausible: return "plausible";
  }
  return "syntax";
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Holds: return "holds";
    case Decision::Refuted: return "refuted";
    case Decision::Inconsistent: return "inconsistent";
    case Decision::Unknown: return "unknown";
  }
  return "unknown";
}

const char* input_class_name(InputClass c) {
  switch (c) {
    case InputClass::Expected: return "expected";
    case InputClass::Unexpected: return "unexpected";
    case InputClass::Unknown: return "unknown";
  }
  return "unknown";
}

PropProbe decide_prop(VerifierBackend& backend, const std::string& expr,
                      const std::string& unfold_name, int timeout_ms) {
  PropProbe probe;

  ProbeOutcome syn = backend.check_syntax(expr);
  probe.transcript.push_back({check_script(expr), syn.status, syn.detail});
  if (syn.status != ProbeStatus::Pass) {
    probe.decision = Decision::Unknown;
    probe.stage = ProbeStage::Syntax;
    return probe;
  }

  ProbeOutcome pos = backend.guard_decide(expr, false, timeout_ms);
  probe.transcript.push_back({guard_script(expr, false), pos.status, pos.detail});
  ProbeOutcome neg = backend.guard_decide(expr, true, timeout_ms);
  probe.transcript.push_back({guard_script(expr, true), neg.status, neg.detail});
  probe.stage = ProbeStage::Decide;
  bool pos_pass = pos.status == ProbeStatus::Pass;
  bool neg_pass = neg.status == ProbeStatus::Pass;
  if (pos_pass && neg_pass) {
    probe.decision = Decision::Inconsistent;
    return probe;
  }
  if (pos_pass) {
    probe.decision = Decision::Holds;
    return probe;
  }
  if (neg_pass) {
    probe.decision = Decision::Refuted;
    return probe;
  }

  // Neither polarity decided; fall back to property-based search. A
  // counterexample to ¬ expr exhibits expr itself holding.
  ProbeOutcome against_neg = backend.plausible_probe(expr, true, unfold_name, timeout_ms);
  probe.transcript.push_back(
      {plausible_script(expr, true, unfold_name), against_neg.status, against_neg.detail});
  ProbeOutcome against_pos = backend.plausible_probe(expr, false, unfold_name, timeout_ms);
  probe.transcript.push_back(
      {plausible_script(expr, false, unfold_name), against_pos.status, against_pos.detail});
  probe.stage = ProbeStage::Plausible;
  bool holds = against_neg.status == ProbeStatus::Counterexample;
  bool refuted = against_pos.status == ProbeStatus::Counterexample;
  if (holds && refuted) probe.decision = Decision::Inconsistent;
  else if (holds) probe.decision = Decision::Holds;
  else if (refuted) probe.decision = Decision::Refuted;
  else probe.decision = Decision::Unknown;
  return probe;
}

Verdict classify(VerifierBackend& backend, const Task& task, const InputMap& input,
                 const ClassifierConfig& cfg) {
  std::string expr = render_application(task.precond_ref, task.signature, input);
  PropProbe probe = decide_prop(backend, expr, task.precond_ref, cfg.probe_timeout_ms);

  Verdict verdict;
  verdict.stage = probe.stage;
  verdict.transcript = std::move(probe.transcript);
  switch (probe.decision) {
    case Decision::Holds: verdict.value = InputClass::Expected; break;
    case Decision::Refuted: verdict.value = InputClass::Unexpected; break;
    case Decision::Unknown: verdict.value = InputClass::Unknown; break;
    case Decision::Inconsistent:
      throw BackendInconsistency("backend proved both polarities of: " + expr);
  }
  return verdict;
}

ClassificationResult classify_all(VerifierBackend& backend, const Task& task,
                                  std::span<const InputMap> candidates,
                                  const ClassifierConfig& cfg) {
  ClassificationResult result;
  result.verdicts.reserve(candidates.size());
  std::vector<BackendFailure> failures;

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const InputMap& input = candidates[i];
    Verdict verdict;
    try {
      verdict = classify(backend, task, input, cfg);
    } catch (const BackendInconsistency& e) {
      failures.push_back({i, canonical_key(input), e.what()});
      verdict.value = InputClass::Unknown;
      verdict.stage = ProbeStage::Decide;
      result.verdicts.push_back(std::move(verdict));
      ++result.dropped;
      continue;
    }
    switch (verdict.value) {
      case InputClass::Expected: result.expected_inputs.push_back(input); break;
      case InputClass::Unexpected: result.unexpected_inputs.push_back(input); break;
      case InputClass::Unknown: ++result.dropped; break;
    }
    result.verdicts.push_back(std::move(verdict));
  }

  if (!failures.empty()) throw AggregateBackendError(std::move(failures));
  return result;
}

CompletedPairs complete_expected_pairs(Executor& executor, const Task& task,
                                       std::span<const InputMap> expected_inputs,
                                       int timeout_ms) {
  CompletedPairs out;
  for (const InputMap& input : expected_inputs) {
    RunOutcome run = executor.run(task.reference_impl_ref, input, timeout_ms);
    if (run.status == RunStatus::Value && run.value.has_value()) {
      out.pairs.push_back({input, *run.value});
      continue;
    }
    std::string reason = run.status == RunStatus::Timeout ? "timed out" : "runtime failure";
    if (!run.detail.empty()) reason += " (" + run.detail + ")";
    out.skipped.push_back("input " + canonical_key(input) + ": " + reason);
  }
  return out;
}

}  // namespace veriscale
