#include "veriscale/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "veriscale/builtin_backend.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/json_io.hpp"
#include "veriscale/mutation.hpp"
#include "veriscale/reduction.hpp"
#include "veriscale/rng.hpp"
#include "veriscale/seed_gen.hpp"

namespace veriscale {

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig cfg;
  auto get_int = [&](const char* key, int& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    slot = j[key].get<int>();
  };
  get_int("rounds", cfg.rounds);
  get_int("candidates_per_round", cfg.candidates_per_round);
  get_int("example_limit", cfg.example_limit);
  get_int("max_mutations_per_input", cfg.max_mutations_per_input);
  get_int("mutation_multi_step_size", cfg.mutation_multi_step_size);
  get_int("max_adver_impl", cfg.max_adver_impl);
  get_int("spec_profiles", cfg.spec_profiles);
  get_int("max_reject_inputs_per_task", cfg.max_reject_inputs_per_task);
  get_int("keep_per_critical_bucket", cfg.keep_per_critical_bucket);
  get_int("max_accept_test_cases_per_task", cfg.max_accept_test_cases_per_task);
  get_int("probe_timeout_ms", cfg.probe_timeout_ms);
  get_int("run_timeout_ms", cfg.run_timeout_ms);
  get_int("workers", cfg.workers);
  if (j.contains("mutation_ingredient_prob")) {
    if (!j["mutation_ingredient_prob"].is_number())
      throw ConfigError("mutation_ingredient_prob must be a number");
    cfg.mutation_ingredient_prob = j["mutation_ingredient_prob"].get<double>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("seed must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  static const std::vector<std::string> known = {
      "rounds", "candidates_per_round", "example_limit", "max_mutations_per_input",
      "mutation_multi_step_size", "mutation_ingredient_prob", "max_adver_impl", "spec_profiles",
      "max_reject_inputs_per_task", "keep_per_critical_bucket", "max_accept_test_cases_per_task",
      "probe_timeout_ms", "run_timeout_ms", "seed", "workers"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key: " + key);
  }
  cfg.validate();
  return cfg;
}

void PipelineConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(rounds, "rounds");
  positive(candidates_per_round, "candidates_per_round");
  positive(max_mutations_per_input, "max_mutations_per_input");
  positive(mutation_multi_step_size, "mutation_multi_step_size");
  positive(max_adver_impl, "max_adver_impl");
  positive(spec_profiles, "spec_profiles");
  positive(max_reject_inputs_per_task, "max_reject_inputs_per_task");
  positive(keep_per_critical_bucket, "keep_per_critical_bucket");
  positive(max_accept_test_cases_per_task, "max_accept_test_cases_per_task");
  positive(probe_timeout_ms, "probe_timeout_ms");
  positive(run_timeout_ms, "run_timeout_ms");
  positive(workers, "workers");
  if (example_limit < 0) throw ConfigError("example_limit must be non-negative");
  if (mutation_ingredient_prob < 0.0 || mutation_ingredient_prob > 1.0)
    throw ConfigError("mutation_ingredient_prob must lie in [0, 1]");
}

SuiteCounts counts_of(const TestSuite& suite) {
  return {suite.expected_pairs.size(), suite.unexpected_outputs.size(),
          suite.unexpected_inputs.size()};
}

SuiteStats compute_stats(std::span<const SuiteCounts> suites,
                         std::span<const SuiteCounts> baseline) {
  if (suites.empty()) throw EmptySuiteSet("compute_stats needs at least one suite");
  if (!baseline.empty() && baseline.size() != suites.size())
    throw ConfigError("baseline suite count differs from measured suite count");

  auto per_category = [](std::span<const SuiteCounts> set, int cat) {
    CategoryStats stats;
    std::size_t total = 0;
    stats.min = SIZE_MAX;
    for (const SuiteCounts& c : set) {
      std::size_t v = cat == 0 ? c.expected_pairs
                    : cat == 1 ? c.unexpected_outputs
                               : c.unexpected_inputs;
      total += v;
      stats.min = std::min(stats.min, v);
      stats.max = std::max(stats.max, v);
    }
    stats.mean = static_cast<double>(total) / static_cast<double>(set.size());
    return stats;
  };

  SuiteStats stats;
  stats.suite_count = suites.size();
  for (int cat = 0; cat < 3; ++cat) stats.categories[cat] = per_category(suites, cat);
  if (!baseline.empty()) {
    std::array<CategoryStats, 3> base;
    for (int cat = 0; cat < 3; ++cat) base[cat] = per_category(baseline, cat);
    for (int cat = 0; cat < 3; ++cat) {
      if (base[cat].mean > 0.0)
        stats.multipliers[cat] = stats.categories[cat].mean / base[cat].mean;
    }
    stats.baseline = base;
  }
  return stats;
}

SuiteStats compute_stats(std::span<const TestSuite> suites, std::span<const TestSuite> baseline) {
  std::vector<SuiteCounts> measured;
  measured.reserve(suites.size());
  for (const TestSuite& s : suites) measured.push_back(counts_of(s));
  std::vector<SuiteCounts> base;
  base.reserve(baseline.size());
  for (const TestSuite& s : baseline) base.push_back(counts_of(s));
  return compute_stats(std::span<const SuiteCounts>(measured),
                       std::span<const SuiteCounts>(base));
}

std::string format_stats_table(const SuiteStats& stats) {
  auto cell = [](const CategoryStats& c) {
    return fixed2(c.mean) + " (" + std::to_string(c.min) + "-" + std::to_string(c.max) + ")";
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Category", "Mean (Min-Max)"};
  if (stats.baseline) header = {"Category", "Baseline Mean (Min-Max)", "Mean (Min-Max)",
                                "Multiplier"};
  rows.push_back(header);
  for (int cat = 0; cat < 3; ++cat) {
    std::vector<std::string> row;
    row.push_back(kCategoryNames[static_cast<std::size_t>(cat)]);
    if (stats.baseline) row.push_back(cell((*stats.baseline)[cat]));
    row.push_back(cell(stats.categories[cat]));
    if (stats.baseline)
      row.push_back(stats.multipliers[cat] ? "x" + fixed2(round2(*stats.multipliers[cat])) : "-");
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

EvalResult evaluate_code(Executor& executor, const std::string& impl_ref, const TestSuite& suite,
                         int run_timeout_ms) {
  if (suite.expected_pairs.empty())
    throw EmptySuiteSet("evaluate_code needs at least one expected pair");
  EvalResult result;
  int passed = 0;
  for (const IoPair& pair : suite.expected_pairs) {
    RunOutcome run = executor.run(impl_ref, pair.input, run_timeout_ms);
    bool ok = run.status == RunStatus::Value && run.value.has_value() &&
              *run.value == pair.output;
    passed += ok ? 1 : 0;
    result.transcript.push_back(
        {impl_ref + " " + canonical_key(pair.input), ok ? "pass" : "fail"});
  }
  result.code_score =
      static_cast<double>(passed) / static_cast<double>(suite.expected_pairs.size());
  return result;
}

namespace {

void spec_probe(VerifierBackend& backend, const std::string& expr, const std::string& unfold_name,
                bool must_hold, int timeout_ms, EvalResult& result) {
  PropProbe probe = decide_prop(backend, expr, unfold_name, timeout_ms);
  std::string outcome;
  switch (probe.decision) {
    case Decision::Holds:
      if (must_hold) {
        ++result.holds;
        outcome = "holds";
      } else {
        ++result.violations;
        outcome = "violation";
      }
      break;
    case Decision::Refuted:
      if (must_hold) {
        ++result.violations;
        outcome = "violation";
      } else {
        ++result.fails_as_required;
        outcome = "fails_as_required";
      }
      break;
    case Decision::Unknown:
    case Decision::Inconsistent:
      ++result.unknowns;
      outcome = "unknown";
      break;
  }
  result.transcript.push_back({expr, std::move(outcome)});
}

}  // namespace

EvalResult evaluate_spec(VerifierBackend& backend, const ParamSignature& signature,
                         const std::string& precond_ref, const std::string& postcond_ref,
                         const TestSuite& suite, int probe_timeout_ms) {
  if (suite.expected_pairs.empty() && suite.unexpected_inputs.empty() &&
      suite.unexpected_outputs.empty())
    throw EmptySuiteSet("evaluate_spec needs a nonempty suite");
  EvalResult result;
  for (const IoPair& pair : suite.expected_pairs) {
    spec_probe(backend, render_application(precond_ref, signature, pair.input), precond_ref,
               true, probe_timeout_ms, result);
  }
  for (const InputMap& input : suite.unexpected_inputs) {
    spec_probe(backend, render_application(precond_ref, signature, input), precond_ref, false,
               probe_timeout_ms, result);
  }
  for (const IoPair& pair : suite.expected_pairs) {
    spec_probe(backend, render_application(postcond_ref, signature, pair.input, pair.output),
               postcond_ref, true, probe_timeout_ms, result);
  }
  for (const IoPair& pair : suite.unexpected_outputs) {
    spec_probe(backend, render_application(postcond_ref, signature, pair.input, pair.output),
               postcond_ref, false, probe_timeout_ms, result);
  }
  result.spec_lower = result.violations == 0 && result.unknowns == 0 ? 1.0 : 0.0;
  result.spec_upper = result.violations == 0 ? 1.0 : 0.0;
  return result;
}

TestSuite baseline_suite(Executor& executor, const Task& task, int run_timeout_ms) {
  TestSuite suite;
  CompletedPairs completed =
      complete_expected_pairs(executor, task, task.base_expected_inputs, run_timeout_ms);
  suite.expected_pairs = std::move(completed.pairs);
  suite.unexpected_inputs = task.base_unexpected_inputs;
  return suite;
}

TaskPipelineOutcome run_task_pipeline(const Task& task, LlmClient& client,
                                      VerifierBackend& backend, ImplRegistry& registry,
                                      Executor& executor, const PipelineConfig& cfg) {
  cfg.validate();
  TaskPipelineOutcome outcome;
  outcome.task_id = task.id;

  Rng task_rng = Rng(cfg.seed).split(hash64(task.id));

  SeedGenConfig seed_cfg =
      SeedGenConfig::with_candidates(cfg.candidates_per_round, cfg.rounds, cfg.example_limit);
  std::vector<InputMap> seeds = generate_seeds(task, client, seed_cfg, task_rng);
  outcome.seed_count = seeds.size();

  MutationConfig mut_cfg;
  mut_cfg.max_mutations_per_input = cfg.max_mutations_per_input;
  mut_cfg.multi_step_size = cfg.mutation_multi_step_size;
  mut_cfg.ingredient_prob = cfg.mutation_ingredient_prob;
  std::vector<InputMap> candidates = seeds;
  for (InputMap& mutant : expand_candidates(seeds, mut_cfg, task_rng))
    candidates.push_back(std::move(mutant));
  outcome.candidate_count = candidates.size();

  ClassifierConfig cls_cfg{cfg.probe_timeout_ms};
  ClassificationResult classified = classify_all(backend, task, candidates, cls_cfg);
  outcome.expected_count = classified.expected_inputs.size();
  outcome.unexpected_count = classified.unexpected_inputs.size();
  outcome.dropped = classified.dropped;

  CompletedPairs completed = complete_expected_pairs(executor, task, classified.expected_inputs,
                                                     cfg.run_timeout_ms);
  for (const std::string& skip : completed.skipped)
    outcome.log.push_back("reference skip: " + skip);

  AdversarialConfig adv_cfg;
  adv_cfg.max_adver_impl = cfg.max_adver_impl;
  adv_cfg.spec_profiles = cfg.spec_profiles;
  adv_cfg.probe_timeout_ms = cfg.probe_timeout_ms;
  adv_cfg.run_timeout_ms = cfg.run_timeout_ms;
  AdversarialResult adversarial = run_adversarial_stage(task, client, backend, registry,
                                                        executor, completed.pairs, adv_cfg);
  for (const std::string& line : adversarial.log)
    outcome.log.push_back("adversarial: " + line);
  outcome.provenance = adversarial.provenance;

  outcome.full_suite.expected_pairs = std::move(completed.pairs);
  outcome.full_suite.unexpected_inputs = std::move(classified.unexpected_inputs);
  outcome.full_suite.unexpected_outputs = std::move(adversarial.unexpected_outputs);

  ReductionConfig red_cfg;
  red_cfg.max_reject_inputs_per_task = cfg.max_reject_inputs_per_task;
  red_cfg.keep_per_critical_bucket = cfg.keep_per_critical_bucket;
  red_cfg.max_accept_test_cases_per_task = cfg.max_accept_test_cases_per_task;
  red_cfg.run_timeout_ms = cfg.run_timeout_ms;
  std::vector<std::string> impl_refs;
  for (const AdversarialImpl& impl : adversarial.impls) impl_refs.push_back(impl.ref);
  SuiteReduction reduced = reduce_suite(outcome.full_suite, executor, impl_refs, red_cfg);
  outcome.reduced_suite = std::move(reduced.suite);
  outcome.reduction_report = std::move(reduced.report);
  return outcome;
}

PipelineRunResult run_mock_pipeline(std::span<const Task> tasks, const PipelineConfig& cfg) {
  cfg.validate();
  PipelineRunResult result;
  result.outcomes.resize(tasks.size());
  result.baselines.resize(tasks.size());

  std::vector<std::string> errors(tasks.size());
  auto run_one = [&](std::size_t i) {
    const Task& task = tasks[i];
    try {
      const ToyTask* toy = find_builtin_task(task.id);
      if (!toy) throw ConfigError("task " + task.id + " is not in the bundled library");
      MockLlm client(mock_llm_script(*toy, cfg.rounds));
      BuiltinBackend backend;
      CachingExecutor cache(backend);
      result.outcomes[i] = run_task_pipeline(task, client, backend, backend, cache, cfg);
      result.baselines[i] = baseline_suite(backend, task, cfg.run_timeout_ms);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers),
                                              std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_one(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (!errors[i].empty())
      throw Error("task " + tasks[i].id + " failed: " + errors[i]);

  std::vector<TestSuite> reduced;
  for (const TaskPipelineOutcome& o : result.outcomes) reduced.push_back(o.reduced_suite);
  result.stats = compute_stats(std::span<const TestSuite>(reduced),
                               std::span<const TestSuite>(result.baselines));
  return result;
}

void write_task_outputs(const std::string& dir, const TaskPipelineOutcome& outcome) {
  std::filesystem::path base(dir);
  save_suite(outcome.reduced_suite, base / (outcome.task_id + ".suite.json"));
  save_suite(outcome.full_suite, base / (outcome.task_id + ".full_suite.json"));
  atomic_write(base / (outcome.task_id + ".provenance.jsonl"),
               provenance_to_jsonl(outcome.provenance));

  nlohmann::ordered_json report;
  report["task_id"] = outcome.task_id;
  report["seed_count"] = outcome.seed_count;
  report["candidate_count"] = outcome.candidate_count;
  report["expected_count"] = outcome.expected_count;
  report["unexpected_count"] = outcome.unexpected_count;
  report["dropped"] = outcome.dropped;
  report["full_counts"] = {{"expected_pairs", outcome.full_suite.expected_pairs.size()},
                           {"unexpected_outputs", outcome.full_suite.unexpected_outputs.size()},
                           {"unexpected_inputs", outcome.full_suite.unexpected_inputs.size()}};
  report["reduced_counts"] = {
      {"expected_pairs", outcome.reduced_suite.expected_pairs.size()},
      {"unexpected_outputs", outcome.reduced_suite.unexpected_outputs.size()},
      {"unexpected_inputs", outcome.reduced_suite.unexpected_inputs.size()}};
  report["reduction"] = outcome.reduction_report;
  report["log"] = outcome.log;
  atomic_write(base / (outcome.task_id + ".report.json"), report.dump(2) + "\n");
}

}  // namespace veriscale
