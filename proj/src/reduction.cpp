#include "veriscale/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "veriscale/errors.hpp"

namespace veriscale {

namespace {

bool is_sequence_type(ValueType t) {
  return t != ValueType::Int && t != ValueType::Nat;
}

bool is_char_type(ValueType t) { return t == ValueType::ListChar || t == ValueType::String; }

std::vector<std::int64_t> element_view(const Value& v) {
  if (is_char_type(v.type())) {
    std::vector<std::int64_t> out;
    for (char c : v.as_chars()) out.push_back(static_cast<unsigned char>(c));
    return out;
  }
  return v.as_ints();
}

int classify_length(std::size_t len) {
  if (len == 0) return 0;
  if (len == 1) return 1;
  if (len <= 5) return 2;
  return 3;
}

}  // namespace

std::string StructuralSignature::bucket_key() const {
  std::string key;
  key += has_empty_container ? '1' : '0';
  key += has_zero ? '1' : '0';
  key += has_negative ? '1' : '0';
  key += mismatched_lengths ? '1' : '0';
  key += sorted_ascending ? '1' : '0';
  key += sorted_descending ? '1' : '0';
  key += has_duplicates ? '1' : '0';
  key += all_equal ? '1' : '0';
  key += ":L";
  key += std::to_string(length_class);
  return key;
}

StructuralSignature signature_of(const InputMap& input) {
  StructuralSignature sig;
  std::vector<std::size_t> lengths;
  std::size_t max_len = 0;

  for (const auto& [name, value] : input) {
    if (!is_sequence_type(value.type())) {
      std::int64_t v = value.as_int();
      if (v == 0) sig.has_zero = true;
      if (v < 0) sig.has_negative = true;
      continue;
    }
    std::vector<std::int64_t> elems = element_view(value);
    lengths.push_back(elems.size());
    max_len = std::max(max_len, elems.size());
    if (elems.empty()) {
      sig.has_empty_container = true;
      continue;
    }
    bool numeric = !is_char_type(value.type());
    for (std::int64_t e : elems) {
      if (numeric && e == 0) sig.has_zero = true;
      if (numeric && e < 0) sig.has_negative = true;
    }
    if (elems.size() >= 2) {
      if (std::is_sorted(elems.begin(), elems.end())) sig.sorted_ascending = true;
      if (std::is_sorted(elems.rbegin(), elems.rend())) sig.sorted_descending = true;
      if (std::set<std::int64_t>(elems.begin(), elems.end()).size() < elems.size())
        sig.has_duplicates = true;
      if (std::all_of(elems.begin(), elems.end(), [&](std::int64_t e) { return e == elems[0]; }))
        sig.all_equal = true;
    }
  }

  if (lengths.size() >= 2 &&
      !std::all_of(lengths.begin(), lengths.end(), [&](std::size_t l) { return l == lengths[0]; }))
    sig.mismatched_lengths = true;
  sig.length_class = classify_length(max_len);
  return sig;
}

UnexpectedInputReduction reduce_unexpected_inputs(std::span<const InputMap> inputs,
                                                  const ReductionConfig& cfg) {
  UnexpectedInputReduction out;
  if (cfg.max_reject_inputs_per_task <= 0) return out;
  const std::size_t budget = static_cast<std::size_t>(cfg.max_reject_inputs_per_task);

  struct Bucket {
    std::string key;
    bool critical = false;
    std::vector<std::size_t> members;  // candidate indices, arrival order
  };
  std::vector<Bucket> buckets;  // first-occurrence order
  std::map<std::string, std::size_t> bucket_index;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    StructuralSignature sig = signature_of(inputs[i]);
    std::string key = sig.bucket_key();
    auto [it, inserted] = bucket_index.emplace(key, buckets.size());
    if (inserted) buckets.push_back({key, sig.critical(), {}});
    buckets[it->second].members.push_back(i);
  }

  std::vector<std::size_t> selected;
  std::set<std::size_t> taken;
  auto take = [&](std::size_t idx) {
    if (taken.insert(idx).second) selected.push_back(idx);
  };

  // Phase 1: critical buckets.
  std::vector<Bucket*> critical;
  std::vector<Bucket*> ordinary;
  for (Bucket& b : buckets) (b.critical ? critical : ordinary).push_back(&b);
  for (Bucket* b : critical) out.critical_buckets.push_back(b->key);

  std::size_t per_bucket = static_cast<std::size_t>(std::max(cfg.keep_per_critical_bucket, 0));
  if (critical.size() * per_bucket > budget) per_bucket = 1;
  for (Bucket* b : critical) {
    for (std::size_t j = 0; j < per_bucket && j < b->members.size(); ++j) {
      if (selected.size() >= budget) break;
      take(b->members[j]);
    }
    if (selected.size() >= budget) break;
  }

  // Phase 2: round-robin over the non-critical buckets.
  for (std::size_t round = 0; selected.size() < budget; ++round) {
    bool any = false;
    for (Bucket* b : ordinary) {
      if (round >= b->members.size()) continue;
      any = true;
      take(b->members[round]);
      if (selected.size() >= budget) break;
    }
    if (!any) break;
  }

  // Phase 3: drain the residue in canonical-key order.
  if (selected.size() < budget) {
    std::vector<std::pair<std::string, std::size_t>> residue;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (!taken.count(i)) residue.emplace_back(canonical_key(inputs[i]), i);
    std::sort(residue.begin(), residue.end());
    for (const auto& [key, idx] : residue) {
      if (selected.size() >= budget) break;
      take(idx);
    }
  }

  std::sort(selected.begin(), selected.end());
  std::map<std::string, int> retained_counts;
  for (std::size_t idx : selected) {
    out.kept.push_back(inputs[idx]);
    ++retained_counts[signature_of(inputs[idx]).bucket_key()];
  }
  for (const Bucket& b : buckets) {
    auto it = retained_counts.find(b.key);
    out.retained.emplace_back(b.key, it == retained_counts.end() ? 0 : it->second);
  }
  return out;
}

KillMatrix build_kill_matrix(Executor& executor, std::span<const std::string> impl_refs,
                             std::span<const IoPair> expected_pairs, int run_timeout_ms) {
  KillMatrix matrix;
  matrix.impl_refs.assign(impl_refs.begin(), impl_refs.end());
  matrix.cells.assign(impl_refs.size(), std::vector<std::uint8_t>(expected_pairs.size(), 0));
  for (std::size_t i = 0; i < impl_refs.size(); ++i) {
    for (std::size_t j = 0; j < expected_pairs.size(); ++j) {
      RunOutcome run = executor.run(impl_refs[i], expected_pairs[j].input, run_timeout_ms);
      bool killed = run.status != RunStatus::Value || !run.value.has_value() ||
                    !(*run.value == expected_pairs[j].output);
      matrix.cells[i][j] = killed ? 1 : 0;
    }
  }
  return matrix;
}

ExpectedPairReduction reduce_expected_pairs(std::span<const IoPair> pairs,
                                            const KillMatrix& matrix,
                                            const ReductionConfig& cfg) {
  ExpectedPairReduction out;
  const std::size_t n = pairs.size();
  const std::size_t budget =
      static_cast<std::size_t>(std::max(cfg.max_accept_test_cases_per_task, 0));

  std::vector<int> total_kills(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& row : matrix.cells) total_kills[j] += row[j] != 0;

  // Greedy cover: kill every implementation that any pair can kill.
  std::vector<bool> covered(matrix.cells.size(), false);
  std::vector<bool> picked(n, false);
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < matrix.cells.size(); ++i) {
    bool killable = std::any_of(matrix.cells[i].begin(), matrix.cells[i].end(),
                                [](std::uint8_t c) { return c != 0; });
    if (killable) ++uncovered;
    else covered[i] = true;
  }
  std::vector<std::size_t> order;
  while (uncovered > 0) {
    std::size_t best = n;
    int best_new = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (picked[j]) continue;
      int fresh = 0;
      for (std::size_t i = 0; i < matrix.cells.size(); ++i)
        if (!covered[i] && matrix.cells[i][j] != 0) ++fresh;
      if (fresh > best_new) {
        best_new = fresh;
        best = j;
      }
    }
    if (best == n) break;  // unreachable unless the matrix is inconsistent
    picked[best] = true;
    order.push_back(best);
    for (std::size_t i = 0; i < matrix.cells.size(); ++i)
      if (!covered[i] && matrix.cells[i][best] != 0) {
        covered[i] = true;
        --uncovered;
      }
  }
  out.cover_size = order.size();

  // Budget fill: strongest remaining killers first.
  if (order.size() < budget) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < n; ++j)
      if (!picked[j]) rest.push_back(j);
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      return total_kills[a] > total_kills[b];
    });
    for (std::size_t j : rest) {
      if (order.size() >= budget) break;
      picked[j] = true;
      order.push_back(j);
      ++out.fill_size;
    }
  }

  out.kept_indices = order;
  std::sort(out.kept_indices.begin(), out.kept_indices.end());
  for (std::size_t j : out.kept_indices) {
    out.kept.push_back(pairs[j]);
    out.kill_counts.push_back(total_kills[j]);
  }
  return out;
}

SuiteReduction reduce_suite(const TestSuite& suite, Executor& executor,
                            std::span<const std::string> impl_refs, const ReductionConfig& cfg) {
  SuiteReduction out;
  KillMatrix matrix = build_kill_matrix(executor, impl_refs, suite.expected_pairs,
                                        cfg.run_timeout_ms);
  out.expected_pairs = reduce_expected_pairs(suite.expected_pairs, matrix, cfg);
  out.unexpected_inputs = reduce_unexpected_inputs(suite.unexpected_inputs, cfg);

  out.suite.expected_pairs = out.expected_pairs.kept;
  out.suite.unexpected_inputs = out.unexpected_inputs.kept;

  std::set<std::string> retained_inputs;
  for (const IoPair& pair : out.suite.expected_pairs)
    retained_inputs.insert(canonical_key(pair.input));
  for (const IoPair& pair : suite.unexpected_outputs)
    if (retained_inputs.count(canonical_key(pair.input)))
      out.suite.unexpected_outputs.push_back(pair);

  nlohmann::ordered_json report;
  report["critical_buckets"] = out.unexpected_inputs.critical_buckets;
  nlohmann::ordered_json retained = nlohmann::ordered_json::object();
  for (const auto& [key, count] : out.unexpected_inputs.retained) retained[key] = count;
  report["retained_per_bucket"] = std::move(retained);
  report["cover_size"] = out.expected_pairs.cover_size;
  report["fill_size"] = out.expected_pairs.fill_size;
  report["kill_counts"] = out.expected_pairs.kill_counts;
  out.report = std::move(report);
  return out;
}

}  // namespace veriscale
