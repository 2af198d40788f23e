#pragma once

#include <span>
#include <string>
#include <vector>

#include "veriscale/backend.hpp"
#include "veriscale/llm_client.hpp"
#include "veriscale/prompts.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// The two sections of a structured decomposition response.
struct Decomposition {
  std::string input_section;
  std::string output_section;
};

// Splits a decomposition response at its "Input:" / "Output:" headers.
// Throws MissingSlot when either section is absent.
[[nodiscard]] Decomposition parse_decomposition(const std::string& text);

// One generated candidate specification (deliberately independent of the
// ground truth; typically weaker). Names carry a _cand<k> suffix, fallback
// variants a _drop<i> suffix.
struct CandidateSpec {
  std::string precond_source;
  std::string postcond_source;
  std::string precond_name;
  std::string postcond_name;
  bool from_fallback = false;
  bool usable = false;  // both definitions compiled
};

enum class ImplOrigin { RedTeam, FallbackDrop };

[[nodiscard]] const char* impl_origin_name(ImplOrigin o);

// One compiled adversarial implementation, registered under `ref`.
struct AdversarialImpl {
  std::string ref;     // executable handle, unique per task
  std::string name;    // def name as written in the block
  std::string source;  // full def text
  std::size_t spec_index = 0;  // index into AdversarialResult::specs
  ImplOrigin origin = ImplOrigin::RedTeam;
};

// Provenance row for one harvested unexpected output.
struct HarvestRecord {
  std::string id;           // "<task id>#<n>"
  std::string origin;       // impl_origin_name of the producing impl
  std::string source_spec;  // postcondition the impl was generated against
  std::string source_text;  // the impl's def source
};

[[nodiscard]] std::string provenance_to_jsonl(std::span<const HarvestRecord> records);

struct AdversarialConfig {
  int max_adver_impl = 5;   // cap on accepted blocks per red-team response
  int spec_profiles = 1;    // candidate specs requested per task
  int probe_timeout_ms = 10000;
  int run_timeout_ms = 10000;
};

// ---- prompt rendering ----

PromptPair render_decomposition_prompt(const Task& task);
// `candidate_index` picks the _cand<k> names the response must define.
// Throws MissingPrecondText when the task carries no spec source text.
PromptPair render_spec_prompt(const Task& task, const Decomposition& decomp, int candidate_index);
PromptPair render_adversarial_prompt(const Task& task, const std::string& precond_source,
                                     const std::string& postcond_source);

// ---- response parsing ----

// Extracts the two marked definition blocks. Throws SyntaxError when a
// marker is missing.
struct SpecSources {
  std::string precond_source;
  std::string postcond_source;
};
[[nodiscard]] SpecSources parse_spec_response(const std::string& text);

// Extracts numbered "-- Adversarial Implementation i" blocks, at most
// `max_blocks`. Throws NoBlocksFound when the response has none.
[[nodiscard]] std::vector<std::string> parse_adversarial_response(const std::string& text,
                                                                  int max_blocks);

// Leave-one-out weakenings of a conjunctive Prop definition: variant i
// drops conjunct i and is renamed <name>_drop<i+1>. Throws NotConjunctive
// when the body has a single clause.
[[nodiscard]] std::vector<std::string> fallback_drop_constraints(const std::string& def_source);

// ---- harvesting ----

struct HarvestResult {
  std::vector<IoPair> unexpected_outputs;
  std::vector<HarvestRecord> provenance;  // parallel to unexpected_outputs
};

// Runs every implementation over the expected inputs and retains outputs
// that (a) differ from the reference output and (b) still satisfy the
// implementation's own generating postcondition. Duplicated (input,
// output) pairs are kept once.
[[nodiscard]] HarvestResult harvest_unexpected_outputs(
    Executor& executor, VerifierBackend& backend, const Task& task,
    std::span<const CandidateSpec> specs, std::span<const AdversarialImpl> impls,
    std::span<const IoPair> expected_pairs, const AdversarialConfig& cfg);

// ---- orchestration ----

struct AdversarialResult {
  std::vector<CandidateSpec> specs;
  std::vector<AdversarialImpl> impls;
  std::vector<IoPair> unexpected_outputs;
  std::vector<HarvestRecord> provenance;
  std::vector<std::string> log;
};

// Full adversarial stage: decomposition → candidate specs → red-team
// implementations (with the constraint-dropping fallback when no block
// compiles) → unexpected-output harvest against `expected_pairs`.
[[nodiscard]] AdversarialResult run_adversarial_stage(const Task& task, LlmClient& client,
                                                      VerifierBackend& backend,
                                                      ImplRegistry& registry, Executor& executor,
                                                      std::span<const IoPair> expected_pairs,
                                                      const AdversarialConfig& cfg = {});

}  // namespace veriscale
