#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "veriscale/adversarial.hpp"
#include "veriscale/backend.hpp"
#include "veriscale/classifier.hpp"
#include "veriscale/llm_client.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// Every pipeline knob with its stock default, plus runtime plumbing
// (seed, worker cap, probe budgets). Loadable from a flat JSON object.
struct PipelineConfig {
  int rounds = 1;
  int candidates_per_round = 40;
  int example_limit = 5;
  int max_mutations_per_input = 15;
  int mutation_multi_step_size = 5;
  double mutation_ingredient_prob = 0.3;
  int max_adver_impl = 5;
  int spec_profiles = 1;
  int max_reject_inputs_per_task = 50;
  int keep_per_critical_bucket = 1;
  int max_accept_test_cases_per_task = 50;
  int probe_timeout_ms = 10000;
  int run_timeout_ms = 10000;
  std::uint64_t seed = 0;
  int workers = 1;

  static PipelineConfig from_file(const std::string& path);   // throws ConfigError
  static PipelineConfig from_json(const nlohmann::json& j);   // throws ConfigError
  void validate() const;                                      // throws ConfigError
};

// ---- suite statistics ----

struct SuiteCounts {
  std::size_t expected_pairs = 0;
  std::size_t unexpected_outputs = 0;
  std::size_t unexpected_inputs = 0;
};

[[nodiscard]] SuiteCounts counts_of(const TestSuite& suite);

struct CategoryStats {
  double mean = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
};

// Category order is fixed: expected input-output pairs, unexpected
// outputs, unexpected inputs.
inline constexpr std::array<const char*, 3> kCategoryNames = {
    "Expected Input-Output", "Unexpected Output", "Unexpected Input"};

struct SuiteStats {
  std::size_t suite_count = 0;
  std::array<CategoryStats, 3> categories;
  std::optional<std::array<CategoryStats, 3>> baseline;
  // mean / baseline mean, present when a baseline was given and its mean
  // is nonzero.
  std::array<std::optional<double>, 3> multipliers;
};

// Throws EmptySuiteSet without suites; ConfigError when a baseline is
// given with a different suite count.
[[nodiscard]] SuiteStats compute_stats(std::span<const SuiteCounts> suites,
                                       std::span<const SuiteCounts> baseline = {});
[[nodiscard]] SuiteStats compute_stats(std::span<const TestSuite> suites,
                                       std::span<const TestSuite> baseline = {});

// Aligned plain-text report; means and multipliers shown to 2 decimals.
[[nodiscard]] std::string format_stats_table(const SuiteStats& stats);

// ---- scoring ----

struct CaseRecord {
  std::string probe;    // what was checked, human-readable
  std::string outcome;  // pass/fail or holds/fails_as_required/violation/unknown
};

struct EvalResult {
  std::optional<double> code_score;  // fraction of expected pairs reproduced
  std::optional<double> spec_lower;  // 1.0 iff no violations and no unknowns
  std::optional<double> spec_upper;  // 1.0 iff no violations
  int holds = 0;
  int fails_as_required = 0;
  int violations = 0;
  int unknowns = 0;
  std::vector<CaseRecord> transcript;
};

// Replays the suite's expected pairs through one implementation. Runtime
// failure or timeout on a pair counts as a miss. Throws EmptySuiteSet when
// the suite has no expected pairs.
[[nodiscard]] EvalResult evaluate_code(Executor& executor, const std::string& impl_ref,
                                       const TestSuite& suite, int run_timeout_ms = 10000);

// Scores a specification against a suite with four probe groups: the
// precondition must hold on expected inputs and fail on unexpected inputs;
// the postcondition must hold on expected pairs and fail on unexpected
// outputs. Unknown probes separate the two bounds. Throws EmptySuiteSet
// when the suite is empty in every category.
[[nodiscard]] EvalResult evaluate_spec(VerifierBackend& backend, const ParamSignature& signature,
                                       const std::string& precond_ref,
                                       const std::string& postcond_ref, const TestSuite& suite,
                                       int probe_timeout_ms = 10000);

// ---- pipeline ----

struct TaskPipelineOutcome {
  std::string task_id;
  std::size_t seed_count = 0;
  std::size_t candidate_count = 0;
  std::size_t expected_count = 0;    // classified expected inputs
  std::size_t unexpected_count = 0;  // classified unexpected inputs
  std::size_t dropped = 0;           // candidates ending Unknown
  TestSuite full_suite;
  TestSuite reduced_suite;
  nlohmann::ordered_json reduction_report;
  std::vector<HarvestRecord> provenance;
  std::vector<std::string> log;
};

// One task end to end: seed generation, mutation expansion,
// classification, reference-output completion, adversarial harvesting,
// reduction.
[[nodiscard]] TaskPipelineOutcome run_task_pipeline(const Task& task, LlmClient& client,
                                                    VerifierBackend& backend,
                                                    ImplRegistry& registry, Executor& executor,
                                                    const PipelineConfig& cfg);

struct PipelineRunResult {
  std::vector<TaskPipelineOutcome> outcomes;  // task order
  std::vector<TestSuite> baselines;           // per task: base inputs completed
  SuiteStats stats;                           // reduced suites vs baselines
};

// Runs every task against bundled per-task mock clients and the built-in
// desk-scale backend. Fully deterministic for a fixed cfg.seed. Tasks run
// in parallel up to cfg.workers.
[[nodiscard]] PipelineRunResult run_mock_pipeline(std::span<const Task> tasks,
                                                  const PipelineConfig& cfg);

// Writes <id>.suite.json, <id>.full_suite.json, <id>.provenance.jsonl and
// <id>.report.json into `dir` (created when missing); all writes atomic.
void write_task_outputs(const std::string& dir, const TaskPipelineOutcome& outcome);

// Baseline view of a task: base expected inputs completed through the
// reference implementation plus the curated unexpected inputs.
[[nodiscard]] TestSuite baseline_suite(Executor& executor, const Task& task,
                                       int run_timeout_ms = 10000);

}  // namespace veriscale
