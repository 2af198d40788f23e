#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "veriscale/backend.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// Semantic predicate for one specification clause. The environment binds
// the definition's parameter names to values; postcondition clauses see the
// output bound under the result parameter's name (conventionally "result").
using ClauseFn = std::function<bool(const InputMap&)>;

// Executable semantics for one compiled-in implementation.
using ImplFn = std::function<RunOutcome(const InputMap&)>;

struct NamedImpl {
  std::string name;    // canonical registry name, e.g. "insertionSort_rev"
  std::string source;  // full def block
  ImplFn fn;
};

// One bundled task: ground-truth spec, reference implementation, a stable
// of adversarial implementations, mock generator material, and base inputs.
struct ToyTask {
  std::string id;           // file/task id, e.g. "insertion_sort"
  std::string description;  // natural-language problem statement
  ParamSignature signature;
  ValueType output_type = ValueType::Int;
  std::string impl_name;       // "insertionSort"
  std::string impl_signature;  // "def insertionSort (xs : List Int) : List Int"
  std::string precond_name;    // "insertionSort_precond"
  std::string postcond_name;
  std::string precond_text;  // full def blocks
  std::string postcond_text;
  // The single bundled "candidate" specification (deliberately weak), as a
  // mock stand-in for LLM-generated specs. Names carry a _cand1 suffix so
  // they coexist with the ground truth in one backend environment.
  std::string candidate_precond_text;
  std::string candidate_postcond_text;
  NamedImpl reference;
  std::vector<NamedImpl> adversarial;
  std::vector<InputMap> base_expected;
  std::vector<InputMap> base_unexpected;
  std::vector<InputMap> mock_seed_inputs;
  // Adversarial-response plan for the mock client: one entry per scripted
  // red-team response; each lists indexes into `adversarial` to embed as
  // numbered blocks. An empty index list scripts a prose (unusable)
  // response, which drives the constraint-dropping fallback.
  std::vector<std::vector<int>> mock_adversarial_blocks;
};

const std::vector<ToyTask>& builtin_tasks();
const ToyTask* find_builtin_task(const std::string& id);

// Clause-text table: normalized clause → semantics. Shared by every
// definition the desk-scale backend can compile.
const std::map<std::string, ClauseFn>& builtin_clause_table();

// Implementation table keyed by the normalized "(params) : Ret := body"
// shape (name stripped), so renamed blocks resolve to the same semantics.
struct ImplSpec {
  ParamSignature signature;
  ValueType output_type;
  ImplFn fn;
};
const std::map<std::string, ImplSpec>& builtin_impl_table();
std::string impl_table_key(const std::string& raw_params, const std::string& return_type,
                           const std::string& body);

// Pipeline-facing view of a bundled task.
Task to_task(const ToyTask& toy);

// Scripted mock responses, consumed FIFO by the per-task pipeline:
// seed round(s), decomposition, specification, then red-team response(s).
std::string mock_seed_response(const ToyTask& toy);
std::string mock_decomposition_response(const ToyTask& toy);
std::string mock_spec_response(const ToyTask& toy);
std::vector<std::string> mock_adversarial_responses(const ToyTask& toy);
std::vector<std::string> mock_llm_script(const ToyTask& toy, int seed_rounds = 1);

}  // namespace veriscale
