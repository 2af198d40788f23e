#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "veriscale/backend.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// Structural shape of one input binding, used to bucket precondition
// violations so that reduction keeps one witness per boundary family
// instead of fifty near-duplicates.
struct StructuralSignature {
  // Critical flags: the families that most precondition violations live in.
  bool has_empty_container = false;  // some sequence parameter is empty
  bool has_zero = false;             // some numeric scalar/element is zero
  bool has_negative = false;         // some numeric scalar/element is negative
  bool mismatched_lengths = false;   // >= 2 sequence params of unequal length
  // Secondary flags.
  bool sorted_ascending = false;   // some sequence (len >= 2) is nondecreasing
  bool sorted_descending = false;  // some sequence (len >= 2) is nonincreasing
  bool has_duplicates = false;     // some sequence repeats an element
  bool all_equal = false;          // some sequence (len >= 2) is constant
  int length_class = 0;            // largest sequence length: 0, 1, 2..5 -> 2, 6+ -> 3

  [[nodiscard]] std::string bucket_key() const;
  [[nodiscard]] bool critical() const {
    return has_empty_container || has_zero || has_negative || mismatched_lengths;
  }
  bool operator==(const StructuralSignature&) const = default;
};

[[nodiscard]] StructuralSignature signature_of(const InputMap& input);

struct ReductionConfig {
  int max_reject_inputs_per_task = 50;
  int keep_per_critical_bucket = 1;
  int max_accept_test_cases_per_task = 50;
  int run_timeout_ms = 10000;
};

struct UnexpectedInputReduction {
  std::vector<InputMap> kept;
  // Report material.
  std::vector<std::string> critical_buckets;          // bucket keys, priority order
  std::vector<std::pair<std::string, int>> retained;  // bucket key -> kept count
};

// Boundary-preserving reduction of precondition-violating inputs:
//   1. every critical bucket keeps keep_per_critical_bucket members (one
//      each, priority order, when the cap is tighter than the bucket count);
//   2. non-critical buckets are drained round-robin;
//   3. any residual budget fills by canonical-key order.
// The cap is strict: never more than max_reject_inputs_per_task outputs.
[[nodiscard]] UnexpectedInputReduction reduce_unexpected_inputs(std::span<const InputMap> inputs,
                                                                const ReductionConfig& cfg);

// kill(i, j): implementation i produced a wrong output or failed at run
// time on expected pair j.
struct KillMatrix {
  std::vector<std::string> impl_refs;
  std::vector<std::vector<std::uint8_t>> cells;  // [impl][pair]

  [[nodiscard]] bool kill(std::size_t impl, std::size_t pair) const {
    return cells[impl][pair] != 0;
  }
  [[nodiscard]] int kills_of_pair(std::size_t pair) const {
    int n = 0;
    for (const auto& row : cells) n += row[pair] != 0;
    return n;
  }
};

[[nodiscard]] KillMatrix build_kill_matrix(Executor& executor,
                                           std::span<const std::string> impl_refs,
                                           std::span<const IoPair> expected_pairs,
                                           int run_timeout_ms = 10000);

struct ExpectedPairReduction {
  std::vector<std::size_t> kept_indices;  // ascending original order
  std::vector<IoPair> kept;
  // Report material.
  std::size_t cover_size = 0;  // pairs taken by the greedy cover phase
  std::size_t fill_size = 0;   // pairs added by the budget-fill phase
  std::vector<int> kill_counts;  // per kept pair, total kills
};

// Adversary-killing reduction of expected pairs: greedy set cover over the
// kill matrix (most new kills first, ties to the lowest index) until every
// killable implementation is killed — the cover is kept even when it
// exceeds the budget — then pads with the highest-total-kill remaining
// pairs (ties to the lowest index) up to max_accept_test_cases_per_task.
[[nodiscard]] ExpectedPairReduction reduce_expected_pairs(std::span<const IoPair> pairs,
                                                          const KillMatrix& matrix,
                                                          const ReductionConfig& cfg);

struct SuiteReduction {
  TestSuite suite;
  UnexpectedInputReduction unexpected_inputs;
  ExpectedPairReduction expected_pairs;
  nlohmann::ordered_json report;
};

// Applies both reductions to a full suite and co-filters unexpected
// outputs: an unexpected output survives only when its input is still
// present among the retained expected pairs.
[[nodiscard]] SuiteReduction reduce_suite(const TestSuite& suite, Executor& executor,
                                          std::span<const std::string> impl_refs,
                                          const ReductionConfig& cfg);

}  // namespace veriscale
