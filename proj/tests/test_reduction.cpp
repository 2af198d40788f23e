#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "veriscale/builtin_backend.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/classifier.hpp"
#include "veriscale/reduction.hpp"
#include "veriscale/rng.hpp"
#include "veriscale/value.hpp"

using namespace veriscale;

namespace {

InputMap xs_input(std::vector<std::int64_t> xs) {
  return {{"xs", Value::make_sequence(ValueType::ListInt, std::move(xs))}};
}

std::vector<IoPair> dummy_pairs(std::size_t n) {
  std::vector<IoPair> pairs;
  for (std::size_t j = 0; j < n; ++j)
    pairs.push_back({{{"n", Value::make_nat(static_cast<std::int64_t>(j))}},
                     Value::make_int(static_cast<std::int64_t>(j))});
  return pairs;
}

KillMatrix matrix_from(std::vector<std::vector<std::uint8_t>> cells) {
  KillMatrix m;
  for (std::size_t i = 0; i < cells.size(); ++i) m.impl_refs.push_back("i" + std::to_string(i));
  m.cells = std::move(cells);
  return m;
}

// Independent oracle: the set of implementations killed by a pair subset.
std::set<std::size_t> killed_by(const KillMatrix& m, const std::vector<std::size_t>& pair_idx) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < m.cells.size(); ++i)
    for (std::size_t j : pair_idx)
      if (m.cells[i][j] != 0) {
        out.insert(i);
        break;
      }
  return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = j;
  return out;
}

}  // namespace

TEST_CASE("signature_of raises the critical flags") {
  CHECK(signature_of({{"n", Value::make_nat(0)}}).has_zero);
  CHECK(signature_of({{"n", Value::make_int(-3)}}).has_negative);
  CHECK(signature_of(xs_input({})).has_empty_container);
  CHECK(signature_of({{"a", Value::make_sequence(ValueType::ListInt, {1})},
                      {"b", Value::make_sequence(ValueType::ListInt, {2, 3})}})
            .mismatched_lengths);

  StructuralSignature benign = signature_of(xs_input({1, 3, 2}));
  CHECK_FALSE(benign.critical());
  CHECK_FALSE(benign.has_zero);
  CHECK_FALSE(benign.has_negative);
  CHECK_FALSE(benign.has_empty_container);
  CHECK_FALSE(benign.mismatched_lengths);
}

TEST_CASE("signature_of inspects sequence elements for zero and negative") {
  CHECK(signature_of(xs_input({5, 0, 7})).has_zero);
  CHECK(signature_of(xs_input({5, -2, 7})).has_negative);
  StructuralSignature both = signature_of(xs_input({-1, 0}));
  CHECK(both.has_zero);
  CHECK(both.has_negative);
}

TEST_CASE("character payloads never raise the numeric flags") {
  StructuralSignature s = signature_of({{"s", Value::make_chars(ValueType::String, "a0")}});
  CHECK_FALSE(s.has_zero);
  CHECK_FALSE(s.has_negative);
  // Character codes still order: 'a' > '0' makes "a0" descending.
  CHECK(s.sorted_descending);
  StructuralSignature empty = signature_of({{"s", Value::make_chars(ValueType::String, "")}});
  CHECK(empty.has_empty_container);
}

TEST_CASE("signature_of order and shape flags need two elements") {
  StructuralSignature asc = signature_of(xs_input({1, 2, 3}));
  CHECK(asc.sorted_ascending);
  CHECK_FALSE(asc.sorted_descending);
  CHECK_FALSE(asc.has_duplicates);
  CHECK_FALSE(asc.all_equal);

  StructuralSignature desc = signature_of(xs_input({9, 4, 2}));
  CHECK(desc.sorted_descending);
  CHECK_FALSE(desc.sorted_ascending);

  StructuralSignature constant = signature_of(xs_input({5, 5, 5}));
  CHECK(constant.all_equal);
  CHECK(constant.has_duplicates);
  CHECK(constant.sorted_ascending);
  CHECK(constant.sorted_descending);

  StructuralSignature dup = signature_of(xs_input({1, 2, 1}));
  CHECK(dup.has_duplicates);
  CHECK_FALSE(dup.all_equal);

  StructuralSignature single = signature_of(xs_input({7}));
  CHECK_FALSE(single.sorted_ascending);
  CHECK_FALSE(single.sorted_descending);
  CHECK_FALSE(single.has_duplicates);
  CHECK_FALSE(single.all_equal);
}

TEST_CASE("length classes split at 0, 1, 5, and 6") {
  CHECK(signature_of({{"n", Value::make_nat(3)}}).length_class == 0);
  CHECK(signature_of(xs_input({})).length_class == 0);
  CHECK(signature_of(xs_input({4})).length_class == 1);
  CHECK(signature_of(xs_input({4, 5})).length_class == 2);
  CHECK(signature_of(xs_input({1, 2, 3, 4, 5})).length_class == 2);
  CHECK(signature_of(xs_input({1, 2, 3, 4, 5, 6})).length_class == 3);
  // The largest sequence wins.
  CHECK(signature_of({{"a", Value::make_sequence(ValueType::ListInt, {1})},
                      {"b", Value::make_sequence(ValueType::ListInt, {1, 2, 3, 4, 5, 6, 7})}})
            .length_class == 3);
}

TEST_CASE("bucket keys are eight flag bits plus the length class") {
  StructuralSignature s;
  CHECK(s.bucket_key() == "00000000:L0");
  s.has_empty_container = true;
  s.length_class = 2;
  CHECK(s.bucket_key() == "10000000:L2");
  StructuralSignature t;
  t.has_zero = t.has_negative = t.mismatched_lengths = true;
  t.sorted_ascending = t.sorted_descending = t.has_duplicates = t.all_equal = true;
  t.has_empty_container = true;
  t.length_class = 3;
  CHECK(t.bucket_key() == "11111111:L3");
  CHECK(signature_of(xs_input({1, 2, 3})).bucket_key() == "00001000:L2");
}

TEST_CASE("only the four boundary families count as critical") {
  for (int flag = 0; flag < 4; ++flag) {
    StructuralSignature s;
    if (flag == 0) s.has_empty_container = true;
    if (flag == 1) s.has_zero = true;
    if (flag == 2) s.has_negative = true;
    if (flag == 3) s.mismatched_lengths = true;
    CHECK(s.critical());
  }
  StructuralSignature secondary;
  secondary.sorted_ascending = true;
  secondary.has_duplicates = true;
  secondary.all_equal = true;
  secondary.length_class = 3;
  CHECK_FALSE(secondary.critical());
}

TEST_CASE("unexpected-input reduction keeps critical buckets first") {
  // Two critical families (negative singletons, empty list) and one
  // benign family; a budget of 3 must cover both critical buckets.
  std::vector<InputMap> inputs = {
      xs_input({-1}), xs_input({-2}), xs_input({}),
      xs_input({1, 2}), xs_input({1, 3}),
  };
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 3;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  REQUIRE(red.kept.size() == 3);
  CHECK(red.kept[0] == inputs[0]);  // first member of the negative bucket
  CHECK(red.kept[1] == inputs[2]);  // the empty-list bucket
  CHECK(red.kept[2] == inputs[3]);  // round-robin start of the benign bucket
  REQUIRE(red.critical_buckets.size() == 2);
  CHECK(red.critical_buckets[0] == signature_of(inputs[0]).bucket_key());
  CHECK(red.critical_buckets[1] == signature_of(inputs[2]).bucket_key());
}

TEST_CASE("per-bucket keep downgrades to one when critical buckets crowd the budget") {
  // Three critical buckets, keep 5 per bucket, but budget 3: each bucket
  // still contributes exactly one witness.
  std::vector<InputMap> inputs = {
      xs_input({-1}), xs_input({-2}),                    // negative L1
      xs_input({}),                                      // empty
      {{"n", Value::make_nat(0)}},                       // zero scalar
  };
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 3;
  cfg.keep_per_critical_bucket = 5;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  REQUIRE(red.kept.size() == 3);
  CHECK(red.kept[0] == inputs[0]);
  CHECK(red.kept[1] == inputs[2]);
  CHECK(red.kept[2] == inputs[3]);
}

TEST_CASE("keep_per_critical_bucket retains several witnesses when budget allows") {
  std::vector<InputMap> inputs = {xs_input({-1}), xs_input({-2}), xs_input({-3})};
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 10;
  cfg.keep_per_critical_bucket = 2;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  // Phase 1 takes two, phase 3 drains the residue under the open budget.
  REQUIRE(red.kept.size() == 3);
  REQUIRE(red.retained.size() == 1);
  CHECK(red.retained[0].second == 3);
}

TEST_CASE("non-critical buckets drain round-robin under a tight budget") {
  std::vector<InputMap> inputs = {
      xs_input({1, 2}),  // ascending bucket, member 1
      xs_input({2, 1}),  // descending bucket, member 1
      xs_input({1, 3}),  // ascending bucket, member 2
      xs_input({3, 1}),  // descending bucket, member 2
      xs_input({1, 4}),  // ascending bucket, member 3
  };
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 3;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  REQUIRE(red.kept.size() == 3);
  // One from each bucket first, then the second ascending member — never
  // three ascending members while the descending bucket still has one.
  CHECK(red.kept[0] == inputs[0]);
  CHECK(red.kept[1] == inputs[1]);
  CHECK(red.kept[2] == inputs[2]);
}

TEST_CASE("residual budget drains leftovers in canonical-key order") {
  std::vector<InputMap> inputs = {xs_input({-3}), xs_input({-1}), xs_input({-2})};
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 2;
  cfg.keep_per_critical_bucket = 1;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  REQUIRE(red.kept.size() == 2);
  CHECK(red.kept[0] == inputs[0]);  // phase 1: first arrival in the bucket
  CHECK(red.kept[1] == inputs[1]);  // phase 3: "-1" sorts before "-2"
}

TEST_CASE("the reject cap is strict and zero disables the category") {
  std::vector<InputMap> inputs;
  for (int i = 0; i < 40; ++i) inputs.push_back(xs_input({-1, -i}));
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 7;
  CHECK(reduce_unexpected_inputs(inputs, cfg).kept.size() == 7);
  cfg.max_reject_inputs_per_task = 0;
  CHECK(reduce_unexpected_inputs(inputs, cfg).kept.empty());
}

TEST_CASE("kept inputs preserve their original relative order") {
  std::vector<InputMap> inputs = {xs_input({1, 2}), xs_input({-5}), xs_input({2, 1}),
                                  xs_input({})};
  ReductionConfig cfg;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  REQUIRE(red.kept.size() == 4);
  CHECK(red.kept[0] == inputs[0]);
  CHECK(red.kept[1] == inputs[1]);
  CHECK(red.kept[2] == inputs[2]);
  CHECK(red.kept[3] == inputs[3]);
}

TEST_CASE("retained report pairs every bucket with its kept count") {
  std::vector<InputMap> inputs = {xs_input({-1}), xs_input({-2}), xs_input({1, 2})};
  ReductionConfig cfg;
  cfg.max_reject_inputs_per_task = 2;
  UnexpectedInputReduction red = reduce_unexpected_inputs(inputs, cfg);
  REQUIRE(red.retained.size() == 2);
  CHECK(red.retained[0].first == signature_of(inputs[0]).bucket_key());
  CHECK(red.retained[0].second == 1);
  CHECK(red.retained[1].first == signature_of(inputs[2]).bucket_key());
  CHECK(red.retained[1].second == 1);
  int total = 0;
  for (const auto& [key, count] : red.retained) total += count;
  CHECK(static_cast<std::size_t>(total) == red.kept.size());
}

TEST_CASE("kill matrix marks wrong outputs and failures over the sorting stable") {
  BuiltinBackend backend;
  Task task = to_task(*find_builtin_task("insertion_sort"));
  CompletedPairs done = complete_expected_pairs(backend, task, task.base_expected_inputs);
  REQUIRE(done.pairs.size() == 5);

  std::vector<std::string> refs = {
      "insertionSort_rev",       "insertionSort_replicate_head",
      "insertionSort_replicate_zero", "insertionSort_range",
      "insertionSort_empty",     "insertionSort_identity",
      "insertionSort_head_singleton"};
  KillMatrix m = build_kill_matrix(backend, refs, done.pairs);
  REQUIRE(m.cells.size() == 7);
  REQUIRE(m.cells[0].size() == 5);

  // Hand-derived rows over the base fixtures [0,-1,-2,-3,-4], [], [1],
  // [3,1,2], [2,2,1].
  CHECK(m.cells[0] == std::vector<std::uint8_t>{0, 0, 0, 1, 0});  // reverse
  CHECK(m.cells[1] == std::vector<std::uint8_t>{1, 0, 0, 1, 1});  // replicate head
  CHECK(m.cells[2] == std::vector<std::uint8_t>{1, 0, 1, 1, 1});  // replicate zero
  CHECK(m.cells[3] == std::vector<std::uint8_t>{1, 0, 1, 1, 1});  // range
  CHECK(m.cells[4] == std::vector<std::uint8_t>{1, 0, 1, 1, 1});  // empty
  CHECK(m.cells[5] == std::vector<std::uint8_t>{1, 0, 0, 1, 1});  // identity
  CHECK(m.cells[6] == std::vector<std::uint8_t>{1, 0, 0, 1, 1});  // head singleton

  // The reverse-sorted fixture kills every attacker except the reverser.
  CHECK(m.kills_of_pair(0) == 6);
  CHECK(m.kills_of_pair(1) == 0);
  CHECK(m.kills_of_pair(3) == 7);
}

TEST_CASE("kill matrix counts runtime failures and timeouts as kills") {
  BuiltinBackend backend;
  Task task = to_task(*find_builtin_task("insertion_sort"));
  CompletedPairs done = complete_expected_pairs(backend, task, task.base_expected_inputs);
  std::vector<std::string> refs = {"no_such_impl", "spinForever"};
  KillMatrix m = build_kill_matrix(backend, refs, done.pairs);
  for (std::size_t i = 0; i < refs.size(); ++i)
    for (std::size_t j = 0; j < done.pairs.size(); ++j) CHECK(m.kill(i, j));
}

TEST_CASE("greedy cover picks the strongest pair and fills with top killers") {
  std::vector<IoPair> pairs = dummy_pairs(4);
  KillMatrix m = matrix_from({
      {1, 1, 0, 0},  // impl0: pairs 0, 1
      {0, 1, 0, 0},  // impl1: pair 1
      {0, 0, 0, 1},  // impl2: pair 3
  });
  ReductionConfig cfg;
  cfg.max_accept_test_cases_per_task = 3;
  ExpectedPairReduction red = reduce_expected_pairs(pairs, m, cfg);
  CHECK(red.cover_size == 2);  // pair 1 (two fresh kills), then pair 3
  CHECK(red.fill_size == 1);   // pair 0 beats pair 2 on total kills
  CHECK(red.kept_indices == std::vector<std::size_t>{0, 1, 3});
  CHECK(red.kill_counts == std::vector<int>{1, 2, 1});
  REQUIRE(red.kept.size() == 3);
  CHECK(red.kept[1] == pairs[1]);
}

TEST_CASE("greedy ties resolve to the lowest pair index") {
  std::vector<IoPair> pairs = dummy_pairs(3);
  KillMatrix m = matrix_from({
      {0, 1, 1},
      {0, 1, 1},
  });
  ReductionConfig cfg;
  cfg.max_accept_test_cases_per_task = 1;
  ExpectedPairReduction red = reduce_expected_pairs(pairs, m, cfg);
  CHECK(red.cover_size == 1);
  CHECK(red.kept_indices == std::vector<std::size_t>{1});
}

TEST_CASE("the greedy cover survives even when it exceeds the budget") {
  std::vector<IoPair> pairs = dummy_pairs(3);
  KillMatrix m = matrix_from({
      {1, 0, 0},
      {0, 1, 0},
      {0, 0, 1},
  });
  ReductionConfig cfg;
  cfg.max_accept_test_cases_per_task = 1;
  ExpectedPairReduction red = reduce_expected_pairs(pairs, m, cfg);
  CHECK(red.cover_size == 3);
  CHECK(red.fill_size == 0);
  CHECK(red.kept.size() == 3);
}

TEST_CASE("unkillable implementations do not block the cover") {
  std::vector<IoPair> pairs = dummy_pairs(2);
  KillMatrix m = matrix_from({
      {0, 0},  // nothing kills impl0
      {1, 0},
  });
  ReductionConfig cfg;
  cfg.max_accept_test_cases_per_task = 1;
  ExpectedPairReduction red = reduce_expected_pairs(pairs, m, cfg);
  CHECK(red.cover_size == 1);
  CHECK(red.kept_indices == std::vector<std::size_t>{0});
}

TEST_CASE("an empty kill matrix degrades to index-order budget fill") {
  std::vector<IoPair> pairs = dummy_pairs(5);
  KillMatrix m;
  m.cells = {};
  ReductionConfig cfg;
  cfg.max_accept_test_cases_per_task = 3;
  ExpectedPairReduction red = reduce_expected_pairs(pairs, m, cfg);
  CHECK(red.cover_size == 0);
  CHECK(red.fill_size == 3);
  CHECK(red.kept_indices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("reduced pair sets kill exactly what the full set killed") {
  Rng rng(20250819);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n_pairs = 1 + rng.below(12);
    std::size_t n_impls = 1 + rng.below(8);
    std::vector<std::vector<std::uint8_t>> cells(n_impls,
                                                 std::vector<std::uint8_t>(n_pairs, 0));
    for (auto& row : cells)
      for (auto& cell : row) cell = rng.chance(0.3) ? 1 : 0;
    KillMatrix m = matrix_from(std::move(cells));
    std::vector<IoPair> pairs = dummy_pairs(n_pairs);
    ReductionConfig cfg;
    cfg.max_accept_test_cases_per_task = static_cast<int>(1 + rng.below(4));
    ExpectedPairReduction red = reduce_expected_pairs(pairs, m, cfg);
    CAPTURE(trial);
    CHECK(killed_by(m, red.kept_indices) == killed_by(m, all_indices(n_pairs)));
    CHECK(std::is_sorted(red.kept_indices.begin(), red.kept_indices.end()));
    CHECK(red.kept.size() == red.kept_indices.size());
    CHECK(red.kill_counts.size() == red.kept.size());
  }
}

TEST_CASE("suite reduction co-filters unexpected outputs by surviving inputs") {
  BuiltinBackend backend;
  Task task = to_task(*find_builtin_task("insertion_sort"));
  CompletedPairs done = complete_expected_pairs(backend, task, task.base_expected_inputs);

  TestSuite suite;
  suite.expected_pairs = done.pairs;
  suite.unexpected_inputs = {};
  suite.unexpected_outputs = {
      {xs_input({3, 1, 2}), Value::make_sequence(ValueType::ListInt, {2, 1, 3})},
      {xs_input({}), Value::make_sequence(ValueType::ListInt, {7})},
  };

  // The reverser is only killed by [3, 1, 2]; with a budget of one, that
  // pair is the whole reduced suite.
  std::vector<std::string> refs = {"insertionSort_rev"};
  ReductionConfig cfg;
  cfg.max_accept_test_cases_per_task = 1;
  SuiteReduction red = reduce_suite(suite, backend, refs, cfg);

  REQUIRE(red.suite.expected_pairs.size() == 1);
  CHECK(red.suite.expected_pairs[0].input == xs_input({3, 1, 2}));
  REQUIRE(red.suite.unexpected_outputs.size() == 1);
  CHECK(red.suite.unexpected_outputs[0].input == xs_input({3, 1, 2}));

  CHECK(red.report.contains("cover_size"));
  CHECK(red.report.contains("fill_size"));
  CHECK(red.report.contains("kill_counts"));
  CHECK(red.report.contains("critical_buckets"));
  CHECK(red.report.contains("retained_per_bucket"));
  CHECK(red.report["cover_size"] == 1);
}

TEST_CASE("suite reduction leaves all categories reduced together") {
  BuiltinBackend backend;
  Task task = to_task(*find_builtin_task("insertion_sort"));
  CompletedPairs done = complete_expected_pairs(backend, task, task.base_expected_inputs);

  TestSuite suite;
  suite.expected_pairs = done.pairs;
  for (int i = 0; i < 60; ++i) suite.unexpected_inputs.push_back(xs_input({-1, -i}));
  suite.unexpected_outputs = {
      {xs_input({0, -1, -2, -3, -4}), Value::make_sequence(ValueType::ListInt, {0, 0, 0, 0, 0})}};

  std::vector<std::string> refs = {"insertionSort_replicate_zero"};
  ReductionConfig cfg;  // default budgets (50/50)
  SuiteReduction red = reduce_suite(suite, backend, refs, cfg);
  CHECK(red.suite.expected_pairs.size() == 5);  // under budget: all kept
  CHECK(red.suite.unexpected_inputs.size() == 50);
  CHECK(red.suite.unexpected_outputs.size() == 1);
}
