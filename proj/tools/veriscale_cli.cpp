// Command-line front end. Each pipeline stage is its own subcommand so the
// intermediate artifacts can be produced, inspected, and replayed one step
// at a time; `pipeline` chains them all.
//
// Exit codes: 0 success, 1 usage, 2 configuration or artifact problems,
// 3 backend/transport failures. With --json, errors also land on stderr as
// {"error": {"type", "message"}}.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "veriscale/adversarial.hpp"
#include "veriscale/backend.hpp"
#include "veriscale/builtin_backend.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/classifier.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/harness.hpp"
#include "veriscale/json_io.hpp"
#include "veriscale/llm_client.hpp"
#include "veriscale/mutation.hpp"
#include "veriscale/reduction.hpp"
#include "veriscale/rng.hpp"
#include "veriscale/seed_gen.hpp"
#include "veriscale/value.hpp"
#include "veriscale/wire_backend.hpp"

using namespace veriscale;

namespace {

// ---- error reporting ----

int report_error(bool json_errors, const char* type, const std::string& message, int code) {
  if (json_errors) {
    nlohmann::ordered_json doc;
    doc["error"] = {{"type", type}, {"message", message}};
    std::fprintf(stderr, "%s\n", doc.dump().c_str());
  } else {
    std::fprintf(stderr, "error: %s\n", message.c_str());
  }
  return code;
}

int guarded(bool json_errors, const std::function<int()>& body) {
  try {
    return body();
  } catch (const BackendUnavailable& e) {
    return report_error(json_errors, "BackendUnavailable", e.what(), 3);
  } catch (const ExecutorUnavailable& e) {
    return report_error(json_errors, "ExecutorUnavailable", e.what(), 3);
  } catch (const ClientError& e) {
    return report_error(json_errors, "ClientError", e.what(), 3);
  } catch (const AggregateBackendError& e) {
    return report_error(json_errors, "AggregateBackendError", e.what(), 3);
  } catch (const BackendInconsistency& e) {
    return report_error(json_errors, "BackendInconsistency", e.what(), 3);
  } catch (const SchemaError& e) {
    return report_error(json_errors, "SchemaError", e.what(), 2);
  } catch (const UnknownType& e) {
    return report_error(json_errors, "UnknownType", e.what(), 2);
  } catch (const SyntaxError& e) {
    return report_error(json_errors, "SyntaxError", e.what(), 2);
  } catch (const TypeMismatch& e) {
    return report_error(json_errors, "TypeMismatch", e.what(), 2);
  } catch (const EmptySuiteSet& e) {
    return report_error(json_errors, "EmptySuiteSet", e.what(), 2);
  } catch (const EmptySeedSet& e) {
    return report_error(json_errors, "EmptySeedSet", e.what(), 2);
  } catch (const ConfigError& e) {
    return report_error(json_errors, "ConfigError", e.what(), 2);
  } catch (const Error& e) {
    return report_error(json_errors, "Error", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error(json_errors, "InternalError", e.what(), 2);
  }
}

// ---- config plumbing ----

// Precedence: built-in defaults < --config file < explicit flags.
struct CfgBinding {
  CLI::Option* opt;
  std::function<void(PipelineConfig&, const PipelineConfig&)> copy;
};

struct CfgFlags {
  std::string config_path;
  PipelineConfig cli;  // flag targets; only fields with count()>0 win
  std::vector<CfgBinding> binds;
};

void bind_config_flags(CLI::App* cmd, CfgFlags* f) {
  cmd->add_option("--config", f->config_path, "Pipeline config file (flat JSON object)");
  auto add = [cmd, f](const std::string& names, auto member, const std::string& desc) {
    CLI::Option* opt = cmd->add_option(names, f->cli.*member, desc);
    f->binds.push_back(
        {opt, [member](PipelineConfig& dst, const PipelineConfig& src) { dst.*member = src.*member; }});
  };
  add("--rounds", &PipelineConfig::rounds, "Seed-generation rounds");
  add("--candidates_per_round,--candidates-per-round", &PipelineConfig::candidates_per_round,
      "Candidate inputs requested per round");
  add("--example_limit,--example-limit", &PipelineConfig::example_limit,
      "Example inputs embedded in the seed prompt");
  add("--max_mutations_per_input,--max-mutations-per-input",
      &PipelineConfig::max_mutations_per_input, "Mutation samples drawn per input");
  add("--mutation_multi_step_size,--mutation-multi-step-size",
      &PipelineConfig::mutation_multi_step_size, "Max schema steps per mutation sample");
  add("--mutation_ingredient_prob,--mutation-ingredient-prob",
      &PipelineConfig::mutation_ingredient_prob, "Ingredient-pool reuse probability");
  add("--max_adver_impl,--max-adver-impl", &PipelineConfig::max_adver_impl,
      "Adversarial implementations kept per response");
  add("--spec_profiles,--spec-profiles", &PipelineConfig::spec_profiles,
      "Candidate spec profiles requested per task");
  add("--max_reject_inputs_per_task,--max-reject-inputs-per-task",
      &PipelineConfig::max_reject_inputs_per_task, "Retained unexpected-input budget");
  add("--keep_per_critical_bucket,--keep-per-critical-bucket",
      &PipelineConfig::keep_per_critical_bucket, "Representatives kept per critical bucket");
  add("--max_accept_test_cases_per_task,--max-accept-test-cases-per-task",
      &PipelineConfig::max_accept_test_cases_per_task, "Retained expected-pair budget");
  add("--probe_timeout_ms,--probe-timeout-ms", &PipelineConfig::probe_timeout_ms,
      "Per-probe verifier budget (ms)");
  add("--run_timeout_ms,--run-timeout-ms", &PipelineConfig::run_timeout_ms,
      "Per-run executor budget (ms)");
  add("--seed", &PipelineConfig::seed, "Root RNG seed");
  add("--workers", &PipelineConfig::workers, "Parallel task workers");
}

PipelineConfig resolve_config(const CfgFlags& f) {
  PipelineConfig cfg =
      f.config_path.empty() ? PipelineConfig{} : PipelineConfig::from_file(f.config_path);
  for (const CfgBinding& b : f.binds)
    if (b.opt->count() > 0) b.copy(cfg, f.cli);
  cfg.validate();
  return cfg;
}

nlohmann::ordered_json config_to_json(const PipelineConfig& c) {
  nlohmann::ordered_json doc;
  doc["rounds"] = c.rounds;
  doc["candidates_per_round"] = c.candidates_per_round;
  doc["example_limit"] = c.example_limit;
  doc["max_mutations_per_input"] = c.max_mutations_per_input;
  doc["mutation_multi_step_size"] = c.mutation_multi_step_size;
  doc["mutation_ingredient_prob"] = c.mutation_ingredient_prob;
  doc["max_adver_impl"] = c.max_adver_impl;
  doc["spec_profiles"] = c.spec_profiles;
  doc["max_reject_inputs_per_task"] = c.max_reject_inputs_per_task;
  doc["keep_per_critical_bucket"] = c.keep_per_critical_bucket;
  doc["max_accept_test_cases_per_task"] = c.max_accept_test_cases_per_task;
  doc["probe_timeout_ms"] = c.probe_timeout_ms;
  doc["run_timeout_ms"] = c.run_timeout_ms;
  doc["seed"] = c.seed;
  doc["workers"] = c.workers;
  return doc;
}

// ---- backend / model-client construction ----

struct BackendFlags {
  std::string cmd;  // worker command, whitespace-separated argv
  std::string url;
};

void bind_backend_flags(CLI::App* cmd, BackendFlags* f) {
  cmd->add_option("--backend-cmd", f->cmd,
                  "Verifier/executor worker command (newline-delimited JSON over stdio)");
  cmd->add_option("--backend-url", f->url, "Verifier/executor HTTP endpoint");
}

struct LlmFlags {
  std::string cmd;
  std::string url;
  std::string model;
  std::string auth_env;
};

void bind_llm_flags(CLI::App* cmd, LlmFlags* f) {
  cmd->add_option("--llm-cmd", f->cmd,
                  "Model client command (one JSON request per line on stdin, reply per line)");
  cmd->add_option("--llm-url", f->url, "Model HTTP endpoint");
  cmd->add_option("--llm-model", f->model, "Model name forwarded to the client");
  cmd->add_option("--llm-auth-env", f->auth_env,
                  "Environment variable holding the bearer token for --llm-url");
}

std::vector<std::string> split_command(const std::string& text) {
  std::vector<std::string> argv;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) argv.push_back(std::exchange(current, {}));
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) argv.push_back(std::move(current));
  if (argv.empty()) throw ConfigError("empty worker command");
  return argv;
}

// Owns whichever backend was selected and exposes it through the three
// role interfaces. Executions always go through the cache.
struct Engine {
  std::unique_ptr<BuiltinBackend> builtin;
  std::unique_ptr<SubprocessBackend> subprocess;
  std::unique_ptr<HttpBackend> http;
  std::unique_ptr<CachingExecutor> cache;
  VerifierBackend* verifier = nullptr;
  Executor* executor = nullptr;
  ImplRegistry* registry = nullptr;
};

Engine make_engine(bool mock, const BackendFlags& f) {
  Engine e;
  Executor* raw = nullptr;
  if (!f.cmd.empty()) {
    e.subprocess = std::make_unique<SubprocessBackend>(split_command(f.cmd));
    e.verifier = e.subprocess.get();
    e.registry = e.subprocess.get();
    raw = e.subprocess.get();
  } else if (!f.url.empty()) {
    e.http = std::make_unique<HttpBackend>(f.url);
    e.verifier = e.http.get();
    e.registry = e.http.get();
    raw = e.http.get();
  } else if (mock) {
    e.builtin = std::make_unique<BuiltinBackend>();
    e.verifier = e.builtin.get();
    e.registry = e.builtin.get();
    raw = e.builtin.get();
  } else {
    throw ConfigError("no backend selected: pass --mock, --backend-cmd, or --backend-url");
  }
  e.cache = std::make_unique<CachingExecutor>(*raw);
  e.executor = e.cache.get();
  return e;
}

// `seed_rounds` sizes the scripted mock conversation; stages that skip seed
// generation pass 0 so the script starts at the decomposition reply.
std::unique_ptr<LlmClient> make_llm(bool mock, const LlmFlags& f, const Task& task,
                                    int seed_rounds) {
  if (!f.cmd.empty()) return std::make_unique<SubprocessLlmClient>(split_command(f.cmd), f.model);
  if (!f.url.empty()) return std::make_unique<HttpLlmClient>(f.url, f.model, f.auth_env);
  if (mock) {
    const ToyTask* toy = find_builtin_task(task.id);
    if (!toy)
      throw ConfigError("task " + task.id +
                        " is not in the bundled library; scripted responses exist only for "
                        "bundled tasks");
    return std::make_unique<MockLlm>(mock_llm_script(*toy, seed_rounds));
  }
  throw ConfigError("no model client selected: pass --mock, --llm-cmd, or --llm-url");
}

// ---- artifact io ----

std::vector<InputMap> load_inputs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw SchemaError(path.string(), "not valid JSON");
  if (!doc.is_array()) throw SchemaError(path.string(), "expected a JSON array of tagged inputs");
  std::vector<InputMap> inputs;
  inputs.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i)
    inputs.push_back(input_from_json(doc[i], "/" + std::to_string(i)));
  return inputs;
}

void save_inputs_file(const std::filesystem::path& path, std::span<const InputMap> inputs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const InputMap& input : inputs) arr.push_back(input_to_json(input));
  atomic_write(path, arr.dump(2) + "\n");
}

// Directory listing for stats/pipeline: prefer the pipeline's own
// "<id>.suite.json" naming; fall back to every ".json" file for
// hand-assembled directories. Sorted by filename for determinism.
std::vector<std::filesystem::path> list_json_files(const std::string& dir, bool prefer_suites) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError(dir + " is not a directory");
  std::vector<std::filesystem::path> suites, all;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (!name.ends_with(".json")) continue;
    all.push_back(entry.path());
    if (name.ends_with(".suite.json")) suites.push_back(entry.path());
  }
  std::vector<std::filesystem::path>& picked = (prefer_suites && !suites.empty()) ? suites : all;
  std::sort(picked.begin(), picked.end());
  return picked;
}

nlohmann::ordered_json stats_to_json(const SuiteStats& stats) {
  nlohmann::ordered_json doc;
  doc["suite_count"] = stats.suite_count;
  nlohmann::ordered_json cats = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < kCategoryNames.size(); ++c) {
    nlohmann::ordered_json row;
    row["category"] = kCategoryNames[c];
    row["mean"] = stats.categories[c].mean;
    row["min"] = stats.categories[c].min;
    row["max"] = stats.categories[c].max;
    if (stats.baseline) {
      row["baseline_mean"] = (*stats.baseline)[c].mean;
      row["baseline_min"] = (*stats.baseline)[c].min;
      row["baseline_max"] = (*stats.baseline)[c].max;
    }
    if (stats.multipliers[c]) row["multiplier"] = *stats.multipliers[c];
    cats.push_back(std::move(row));
  }
  doc["categories"] = std::move(cats);
  return doc;
}

nlohmann::ordered_json eval_to_json(const EvalResult& r) {
  nlohmann::ordered_json doc;
  if (r.code_score) doc["code_score"] = *r.code_score;
  if (r.spec_lower) doc["spec_lower"] = *r.spec_lower;
  if (r.spec_upper) doc["spec_upper"] = *r.spec_upper;
  doc["holds"] = r.holds;
  doc["fails_as_required"] = r.fails_as_required;
  doc["violations"] = r.violations;
  doc["unknowns"] = r.unknowns;
  nlohmann::ordered_json transcript = nlohmann::ordered_json::array();
  for (const CaseRecord& rec : r.transcript)
    transcript.push_back({{"probe", rec.probe}, {"outcome", rec.outcome}});
  doc["transcript"] = std::move(transcript);
  return doc;
}

// ---- subcommands ----

struct ExpandArgs {
  std::string task_path, out_path, seeds_path;
  bool mock = false;
  LlmFlags llm;
  CfgFlags cfg;
};

int run_expand(const ExpandArgs& a) {
  PipelineConfig cfg = resolve_config(a.cfg);
  Task task = load_task(a.task_path);
  Rng rng = Rng(cfg.seed).split(hash64(task.id));

  std::vector<InputMap> seeds;
  if (!a.seeds_path.empty()) {
    seeds = load_inputs_file(a.seeds_path);
    if (seeds.empty()) throw EmptySeedSet("seed file " + a.seeds_path + " holds no inputs");
  } else {
    std::unique_ptr<LlmClient> client = make_llm(a.mock, a.llm, task, cfg.rounds);
    SeedGenConfig seed_cfg =
        SeedGenConfig::with_candidates(cfg.candidates_per_round, cfg.rounds, cfg.example_limit);
    seeds = generate_seeds(task, *client, seed_cfg, rng);
  }

  MutationConfig mut;
  mut.max_mutations_per_input = cfg.max_mutations_per_input;
  mut.multi_step_size = cfg.mutation_multi_step_size;
  mut.ingredient_prob = cfg.mutation_ingredient_prob;
  std::vector<InputMap> candidates = seeds;
  for (InputMap& mutant : expand_candidates(seeds, mut, rng)) candidates.push_back(std::move(mutant));

  save_inputs_file(a.out_path, candidates);
  std::printf("%s: %zu seeds -> %zu candidates -> %s\n", task.id.c_str(), seeds.size(),
              candidates.size(), a.out_path.c_str());
  return 0;
}

struct ClassifyArgs {
  std::string task_path, inputs_path, out_path;
  bool mock = false;
  BackendFlags backend;
  CfgFlags cfg;
};

int run_classify(const ClassifyArgs& a) {
  PipelineConfig cfg = resolve_config(a.cfg);
  Task task = load_task(a.task_path);
  Engine engine = make_engine(a.mock, a.backend);
  std::vector<InputMap> candidates = load_inputs_file(a.inputs_path);

  ClassificationResult result =
      classify_all(*engine.verifier, task, candidates, ClassifierConfig{cfg.probe_timeout_ms});

  nlohmann::ordered_json doc;
  doc["task_id"] = task.id;
  auto dump_inputs = [](std::span<const InputMap> inputs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const InputMap& input : inputs) arr.push_back(input_to_json(input));
    return arr;
  };
  doc["expected_inputs"] = dump_inputs(result.expected_inputs);
  doc["unexpected_inputs"] = dump_inputs(result.unexpected_inputs);
  doc["dropped"] = result.dropped;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
  for (const Verdict& v : result.verdicts)
    verdicts.push_back(
        {{"class", input_class_name(v.value)}, {"stage", probe_stage_name(v.stage)}});
  doc["verdicts"] = std::move(verdicts);
  atomic_write(a.out_path, doc.dump(2) + "\n");

  std::printf("%s: %zu candidates -> %zu expected / %zu unexpected / %zu dropped -> %s\n",
              task.id.c_str(), candidates.size(), result.expected_inputs.size(),
              result.unexpected_inputs.size(), result.dropped, a.out_path.c_str());
  return 0;
}

struct HarvestArgs {
  std::string task_path, suite_path, out_path, provenance_path;
  bool mock = false;
  BackendFlags backend;
  LlmFlags llm;
  CfgFlags cfg;
};

int run_harvest(const HarvestArgs& a) {
  PipelineConfig cfg = resolve_config(a.cfg);
  Task task = load_task(a.task_path);
  Engine engine = make_engine(a.mock, a.backend);
  TestSuite suite = load_suite(a.suite_path);
  if (suite.expected_pairs.empty())
    throw EmptySuiteSet("suite " + a.suite_path + " has no expected pairs to attack");

  std::unique_ptr<LlmClient> client = make_llm(a.mock, a.llm, task, /*seed_rounds=*/0);
  AdversarialConfig adv;
  adv.max_adver_impl = cfg.max_adver_impl;
  adv.spec_profiles = cfg.spec_profiles;
  adv.probe_timeout_ms = cfg.probe_timeout_ms;
  adv.run_timeout_ms = cfg.run_timeout_ms;
  AdversarialResult result = run_adversarial_stage(task, *client, *engine.verifier,
                                                   *engine.registry, *engine.executor,
                                                   suite.expected_pairs, adv);

  suite.unexpected_outputs = std::move(result.unexpected_outputs);
  save_suite(suite, a.out_path);
  if (!a.provenance_path.empty())
    atomic_write(a.provenance_path, provenance_to_jsonl(result.provenance));
  for (const std::string& line : result.log)
    std::fprintf(stderr, "note: %s\n", line.c_str());

  std::printf("%s: %zu specs, %zu adversarial impls -> %zu unexpected outputs -> %s\n",
              task.id.c_str(), result.specs.size(), result.impls.size(),
              suite.unexpected_outputs.size(), a.out_path.c_str());
  return 0;
}

struct ReduceArgs {
  std::string suite_path, out_path, report_path, impls_file;
  std::vector<std::string> impls;
  bool mock = false;
  BackendFlags backend;
  CfgFlags cfg;
};

int run_reduce(const ReduceArgs& a) {
  PipelineConfig cfg = resolve_config(a.cfg);
  Engine engine = make_engine(a.mock, a.backend);
  TestSuite suite = load_suite(a.suite_path);

  std::vector<std::string> impl_refs = a.impls;
  if (!a.impls_file.empty()) {
    std::ifstream in(a.impls_file);
    if (!in) throw ConfigError("cannot open " + a.impls_file);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) impl_refs.push_back(line);
  }

  ReductionConfig red;
  red.max_reject_inputs_per_task = cfg.max_reject_inputs_per_task;
  red.keep_per_critical_bucket = cfg.keep_per_critical_bucket;
  red.max_accept_test_cases_per_task = cfg.max_accept_test_cases_per_task;
  red.run_timeout_ms = cfg.run_timeout_ms;
  SuiteReduction result = reduce_suite(suite, *engine.executor, impl_refs, red);

  save_suite(result.suite, a.out_path);
  if (!a.report_path.empty()) atomic_write(a.report_path, result.report.dump(2) + "\n");

  std::printf("%zu+%zu+%zu -> %zu+%zu+%zu (expected pairs + unexpected outputs + unexpected "
              "inputs) -> %s\n",
              suite.expected_pairs.size(), suite.unexpected_outputs.size(),
              suite.unexpected_inputs.size(), result.suite.expected_pairs.size(),
              result.suite.unexpected_outputs.size(), result.suite.unexpected_inputs.size(),
              a.out_path.c_str());
  return 0;
}

struct StatsArgs {
  std::string suites_dir, baseline_dir, json_out;
};

int run_stats(const StatsArgs& a) {
  std::vector<std::filesystem::path> files = list_json_files(a.suites_dir, true);
  if (files.empty()) throw EmptySuiteSet("no suite files in " + a.suites_dir);
  std::vector<TestSuite> suites;
  suites.reserve(files.size());
  for (const auto& f : files) suites.push_back(load_suite(f));

  std::vector<TestSuite> baseline;
  if (!a.baseline_dir.empty()) {
    std::vector<std::filesystem::path> base_files = list_json_files(a.baseline_dir, true);
    if (base_files.empty()) throw EmptySuiteSet("no suite files in " + a.baseline_dir);
    baseline.reserve(base_files.size());
    for (const auto& f : base_files) baseline.push_back(load_suite(f));
  }

  SuiteStats stats = compute_stats(std::span<const TestSuite>(suites),
                                   std::span<const TestSuite>(baseline));
  std::fputs(format_stats_table(stats).c_str(), stdout);
  if (!a.json_out.empty()) atomic_write(a.json_out, stats_to_json(stats).dump(2) + "\n");
  return 0;
}

struct EvalArgs {
  std::string task_path, suite_path, impl_ref, precond_ref, postcond_ref, json_out;
  bool code = false;
  bool spec = false;
  bool mock = false;
  BackendFlags backend;
  CfgFlags cfg;
};

int run_eval(const EvalArgs& a) {
  PipelineConfig cfg = resolve_config(a.cfg);
  Task task = load_task(a.task_path);
  Engine engine = make_engine(a.mock, a.backend);
  TestSuite suite = load_suite(a.suite_path);

  bool do_code = a.code || !a.impl_ref.empty();
  bool do_spec = a.spec || !a.precond_ref.empty() || !a.postcond_ref.empty();
  if (!do_code && !do_spec) do_code = do_spec = true;

  nlohmann::ordered_json doc;
  doc["task_id"] = task.id;

  if (do_code) {
    std::string impl = a.impl_ref.empty() ? task.reference_impl_ref : a.impl_ref;
    EvalResult r = evaluate_code(*engine.executor, impl, suite, cfg.run_timeout_ms);
    std::size_t pairs = suite.expected_pairs.size();
    auto reproduced = static_cast<std::size_t>(*r.code_score * static_cast<double>(pairs) + 0.5);
    std::printf("code  %s: score %.2f (%zu/%zu pairs reproduced)\n", impl.c_str(), *r.code_score,
                reproduced, pairs);
    doc["code"] = eval_to_json(r);
    doc["code"]["impl_ref"] = impl;
  }
  if (do_spec) {
    std::string pre = a.precond_ref.empty() ? task.precond_ref : a.precond_ref;
    std::string post = a.postcond_ref.empty() ? task.postcond_ref : a.postcond_ref;
    EvalResult r = evaluate_spec(*engine.verifier, task.signature, pre, post, suite,
                                 cfg.probe_timeout_ms);
    std::printf("spec  %s / %s: bounds [%.2f, %.2f] (holds %d, fails-as-required %d, "
                "violations %d, unknown %d)\n",
                pre.c_str(), post.c_str(), *r.spec_lower, *r.spec_upper, r.holds,
                r.fails_as_required, r.violations, r.unknowns);
    doc["spec"] = eval_to_json(r);
    doc["spec"]["precond_ref"] = pre;
    doc["spec"]["postcond_ref"] = post;
  }

  if (!a.json_out.empty()) atomic_write(a.json_out, doc.dump(2) + "\n");
  return 0;
}

struct PipelineArgs {
  std::string tasks_dir, out_dir;
  bool mock = false;
  BackendFlags backend;
  LlmFlags llm;
  CfgFlags cfg;
};

int run_pipeline(const PipelineArgs& a) {
  PipelineConfig cfg = resolve_config(a.cfg);
  std::vector<std::filesystem::path> files = list_json_files(a.tasks_dir, false);
  if (files.empty()) throw ConfigError("no task files in " + a.tasks_dir);
  std::vector<Task> tasks;
  tasks.reserve(files.size());
  for (const auto& f : files) tasks.push_back(load_task(f));

  PipelineRunResult result;
  bool pure_mock = a.mock && a.backend.cmd.empty() && a.backend.url.empty() && a.llm.cmd.empty() &&
                   a.llm.url.empty();
  if (pure_mock) {
    result = run_mock_pipeline(tasks, cfg);
  } else {
    Engine engine = make_engine(a.mock, a.backend);
    std::unique_ptr<LlmClient> shared_client;
    bool mock_llm = a.llm.cmd.empty() && a.llm.url.empty();
    if (!mock_llm) shared_client = make_llm(false, a.llm, tasks.front(), cfg.rounds);
    for (const Task& task : tasks) {
      std::unique_ptr<LlmClient> task_client;
      LlmClient* client = shared_client.get();
      if (mock_llm) {
        task_client = make_llm(true, a.llm, task, cfg.rounds);
        client = task_client.get();
      }
      result.outcomes.push_back(run_task_pipeline(task, *client, *engine.verifier,
                                                  *engine.registry, *engine.executor, cfg));
      result.baselines.push_back(baseline_suite(*engine.executor, task, cfg.run_timeout_ms));
    }
    std::vector<TestSuite> reduced;
    reduced.reserve(result.outcomes.size());
    for (const TaskPipelineOutcome& o : result.outcomes) reduced.push_back(o.reduced_suite);
    result.stats = compute_stats(std::span<const TestSuite>(reduced),
                                 std::span<const TestSuite>(result.baselines));
  }

  std::filesystem::create_directories(a.out_dir);
  std::filesystem::path baseline_dir = std::filesystem::path(a.out_dir) / "baseline";
  for (std::size_t i = 0; i < result.outcomes.size(); ++i)
    save_suite(result.baselines[i],
               baseline_dir / (result.outcomes[i].task_id + ".suite.json"));
  nlohmann::ordered_json task_rows = nlohmann::ordered_json::array();
  for (const TaskPipelineOutcome& o : result.outcomes) {
    write_task_outputs(a.out_dir, o);
    nlohmann::ordered_json row;
    row["task_id"] = o.task_id;
    row["seed_count"] = o.seed_count;
    row["candidate_count"] = o.candidate_count;
    row["expected_count"] = o.expected_count;
    row["unexpected_count"] = o.unexpected_count;
    row["dropped"] = o.dropped;
    row["reduced_counts"] = {{"expected_pairs", o.reduced_suite.expected_pairs.size()},
                             {"unexpected_outputs", o.reduced_suite.unexpected_outputs.size()},
                             {"unexpected_inputs", o.reduced_suite.unexpected_inputs.size()}};
    task_rows.push_back(std::move(row));
    std::printf("%s: %zu candidates -> suite %zu+%zu+%zu\n", o.task_id.c_str(),
                o.candidate_count, o.reduced_suite.expected_pairs.size(),
                o.reduced_suite.unexpected_outputs.size(),
                o.reduced_suite.unexpected_inputs.size());
  }

  nlohmann::ordered_json report;
  report["config"] = config_to_json(cfg);
  report["tasks"] = std::move(task_rows);
  report["stats"] = stats_to_json(result.stats);
  atomic_write(std::filesystem::path(a.out_dir) / "pipeline_report.json",
               report.dump(2) + "\n");

  std::fputs(format_stats_table(result.stats).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial test-suite expansion and reduction pipeline"};
  app.require_subcommand(1);
  bool json_errors = false;
  app.add_flag("--json", json_errors, "Machine-readable error JSON on stderr");

  ExpandArgs expand_args;
  CLI::App* expand = app.add_subcommand(
      "expand", "Generate seed inputs and mutate them into a candidate pool");
  expand->add_option("--task", expand_args.task_path, "Task file")->required();
  expand->add_option("--out", expand_args.out_path, "Candidate list output (tagged JSON array)")
      ->required();
  expand->add_option("--seeds", expand_args.seeds_path,
                     "Skip model seed generation; read seeds from this tagged JSON array");
  expand->add_flag("--mock", expand_args.mock, "Scripted model responses for bundled tasks");
  bind_llm_flags(expand, &expand_args.llm);
  bind_config_flags(expand, &expand_args.cfg);

  ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "Sort candidate inputs by precondition into expected/unexpected");
  classify->add_option("--task", classify_args.task_path, "Task file")->required();
  classify->add_option("--inputs", classify_args.inputs_path, "Candidate list (tagged JSON array)")
      ->required();
  classify->add_option("--out", classify_args.out_path, "Classification output")->required();
  classify->add_flag("--mock", classify_args.mock, "Use the bundled desk-scale backend");
  bind_backend_flags(classify, &classify_args.backend);
  bind_config_flags(classify, &classify_args.cfg);

  HarvestArgs harvest_args;
  CLI::App* harvest = app.add_subcommand(
      "harvest", "Breed adversarial implementations and harvest unexpected outputs");
  harvest->add_option("--task", harvest_args.task_path, "Task file")->required();
  harvest->add_option("--suite", harvest_args.suite_path, "Suite with expected pairs")->required();
  harvest->add_option("--out", harvest_args.out_path, "Suite output with unexpected outputs")
      ->required();
  harvest->add_option("--provenance", harvest_args.provenance_path,
                      "Provenance JSONL output (one record per harvested output)");
  harvest->add_flag("--mock", harvest_args.mock,
                    "Bundled backend plus scripted model responses");
  bind_backend_flags(harvest, &harvest_args.backend);
  bind_llm_flags(harvest, &harvest_args.llm);
  bind_config_flags(harvest, &harvest_args.cfg);

  ReduceArgs reduce_args;
  CLI::App* reduce = app.add_subcommand(
      "reduce", "Shrink a suite: boundary-preserving inputs, adversary-killing pairs");
  reduce->add_option("--suite", reduce_args.suite_path, "Suite file")->required();
  reduce->add_option("--out", reduce_args.out_path, "Reduced suite output")->required();
  reduce->add_option("--report", reduce_args.report_path, "Reduction report JSON output");
  reduce->add_option("--impls", reduce_args.impls, "Adversarial impl refs for the kill matrix")
      ->delimiter(',');
  reduce->add_option("--impls-file", reduce_args.impls_file,
                     "File with one adversarial impl ref per line");
  reduce->add_flag("--mock", reduce_args.mock, "Use the bundled desk-scale backend");
  bind_backend_flags(reduce, &reduce_args.backend);
  bind_config_flags(reduce, &reduce_args.cfg);

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "Suite volume statistics across a directory");
  stats->add_option("--suites", stats_args.suites_dir, "Directory of suite files")->required();
  stats->add_option("--baseline", stats_args.baseline_dir,
                    "Baseline suite directory for growth multipliers");
  stats->add_option("--json-out", stats_args.json_out, "Write the stats as JSON here");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Score an implementation and/or specification against a suite");
  eval->add_option("--task", eval_args.task_path, "Task file")->required();
  eval->add_option("--suite", eval_args.suite_path, "Suite file")->required();
  eval->add_flag("--code", eval_args.code, "Score the implementation (default: both)");
  eval->add_flag("--spec", eval_args.spec, "Score the specification (default: both)");
  eval->add_option("--impl", eval_args.impl_ref, "Implementation ref (default: task reference)");
  eval->add_option("--precond", eval_args.precond_ref,
                   "Precondition ref (default: task ground truth)");
  eval->add_option("--postcond", eval_args.postcond_ref,
                   "Postcondition ref (default: task ground truth)");
  eval->add_option("--json-out", eval_args.json_out, "Write scores and transcript as JSON here");
  eval->add_flag("--mock", eval_args.mock, "Use the bundled desk-scale backend");
  bind_backend_flags(eval, &eval_args.backend);
  bind_config_flags(eval, &eval_args.cfg);

  PipelineArgs pipeline_args;
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "Run every stage over a task directory and write suite artifacts");
  pipeline->add_option("--tasks", pipeline_args.tasks_dir, "Directory of task files")->required();
  pipeline->add_option("--out", pipeline_args.out_dir, "Output directory")->required();
  pipeline->add_flag("--mock", pipeline_args.mock,
                     "Bundled backend plus scripted model responses (fully deterministic)");
  bind_backend_flags(pipeline, &pipeline_args.backend);
  bind_llm_flags(pipeline, &pipeline_args.llm);
  bind_config_flags(pipeline, &pipeline_args.cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  return guarded(json_errors, [&]() -> int {
    if (expand->parsed()) return run_expand(expand_args);
    if (classify->parsed()) return run_classify(classify_args);
    if (harvest->parsed()) return run_harvest(harvest_args);
    if (reduce->parsed()) return run_reduce(reduce_args);
    if (stats->parsed()) return run_stats(stats_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (pipeline->parsed()) return run_pipeline(pipeline_args);
    return 0;
  });
}
