#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "veriscale/adversarial.hpp"
#include "veriscale/builtin_backend.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/classifier.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/lean_text.hpp"
#include "veriscale/llm_client.hpp"
#include "veriscale/value.hpp"

using namespace veriscale;

namespace {

const ToyTask& toy(const std::string& id) {
  const ToyTask* t = find_builtin_task(id);
  REQUIRE(t != nullptr);
  return *t;
}

std::vector<IoPair> completed_base_pairs(BuiltinBackend& backend, const Task& task) {
  CompletedPairs done = complete_expected_pairs(backend, task, task.base_expected_inputs);
  REQUIRE(done.skipped.empty());
  return done.pairs;
}

}  // namespace

TEST_CASE("parse_decomposition splits the two sections") {
  Decomposition d = parse_decomposition(
      "Input:\n    a. xs : List Int\n    b. constraints\nOutput:\n    a. res1 : List Int\n");
  CHECK(d.input_section == "a. xs : List Int\n    b. constraints");
  CHECK(d.output_section == "a. res1 : List Int");
}

TEST_CASE("parse_decomposition accepts every bundled mock response") {
  for (const ToyTask& t : builtin_tasks()) {
    CAPTURE(t.id);
    Decomposition d = parse_decomposition(mock_decomposition_response(t));
    CHECK(!d.input_section.empty());
    CHECK(!d.output_section.empty());
  }
}

TEST_CASE("parse_decomposition reports missing or empty sections") {
  CHECK_THROWS_AS(parse_decomposition("Output:\n  a. res1\n"), MissingSlot);
  CHECK_THROWS_AS(parse_decomposition("Input:\n  a. xs\n"), MissingSlot);
  CHECK_THROWS_AS(parse_decomposition("Input:\nOutput:\n  a. res1\n"), MissingSlot);
  CHECK_THROWS_AS(parse_decomposition("Input:\n  a. xs\nOutput:\n"), MissingSlot);
  // An Output: before any Input: does not count as the output section.
  CHECK_THROWS_AS(parse_decomposition("Output:\n  a. res1\nInput:\n  a. xs\n"), MissingSlot);
}

TEST_CASE("render_spec_prompt embeds candidate-suffixed signatures") {
  Task task = to_task(toy("vector_add"));
  Decomposition d{"a. a : Array Int, b : Array Int", "a. res1 : Array Int"};
  PromptPair p = render_spec_prompt(task, d, 2);
  CHECK(p.user.find("def vectorAdd_precond_cand2 (a : Array Int) (b : Array Int) : Prop") !=
        std::string::npos);
  CHECK(p.user.find("def vectorAdd_postcond_cand2 (a : Array Int) (b : Array Int) "
                    "(result : Array Int) : Prop") != std::string::npos);
  CHECK(p.user.find(d.input_section) != std::string::npos);
  CHECK(p.user.find(d.output_section) != std::string::npos);
  CHECK(p.user.find(task.description) != std::string::npos);

  task.postcond_text.clear();
  CHECK_THROWS_AS((void)render_spec_prompt(task, d, 1), MissingPrecondText);
}

TEST_CASE("render_adversarial_prompt embeds the contract under attack") {
  Task task = to_task(toy("insertion_sort"));
  PromptPair p = render_adversarial_prompt(task, task.precond_text, task.postcond_text);
  CHECK(p.user.find(task.precond_text) != std::string::npos);
  CHECK(p.user.find(task.postcond_text) != std::string::npos);
  CHECK(p.user.find(task.impl_signature) != std::string::npos);

  task.impl_signature.clear();
  CHECK_THROWS_AS((void)render_adversarial_prompt(task, "pre", "post"), MissingSlot);
}

TEST_CASE("parse_spec_response extracts both marked blocks") {
  const ToyTask& t = toy("array_sum");
  SpecSources sources = parse_spec_response(mock_spec_response(t));
  CHECK(sources.precond_source == t.candidate_precond_text);
  CHECK(sources.postcond_source == t.candidate_postcond_text);
}

TEST_CASE("parse_spec_response rejects missing, swapped, or empty markers") {
  CHECK_THROWS_AS(parse_spec_response("-- Postcondition Implementation\ndef p : Prop := True"),
                  SyntaxError);
  CHECK_THROWS_AS(parse_spec_response("-- Precondition Implementation\ndef p : Prop := True"),
                  SyntaxError);
  CHECK_THROWS_AS(
      parse_spec_response("-- Postcondition Implementation\ndef q : Prop := True\n"
                          "-- Precondition Implementation\ndef p : Prop := True"),
      SyntaxError);
  CHECK_THROWS_AS(
      parse_spec_response("-- Precondition Implementation\n-- Postcondition Implementation\n"
                          "def q : Prop := True"),
      SyntaxError);
}

TEST_CASE("parse_adversarial_response extracts numbered blocks with a cap") {
  std::vector<std::string> responses = mock_adversarial_responses(toy("insertion_sort"));
  REQUIRE(responses.size() == 1);
  std::vector<std::string> blocks = parse_adversarial_response(responses[0], 5);
  REQUIRE(blocks.size() == 5);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    DefHeader h = parse_def_header(blocks[i]);
    CHECK(h.name == "insertionSort" + std::to_string(i + 1));
  }
  CHECK(parse_adversarial_response(responses[0], 3).size() == 3);
  CHECK(parse_adversarial_response(responses[0], -1).size() == 5);
}

TEST_CASE("parse_adversarial_response rejects prose and empty blocks") {
  CHECK_THROWS_AS(parse_adversarial_response("I refuse to write degenerate code.", 5),
                  NoBlocksFound);
  CHECK_THROWS_AS(
      parse_adversarial_response("-- Adversarial Implementation 1\n\n"
                                 "-- Adversarial Implementation 2\n\n",
                                 5),
      NoBlocksFound);
}

TEST_CASE("fallback_drop_constraints builds one leave-one-out variant per clause") {
  const ToyTask& t = toy("insertion_sort");
  std::vector<std::string> weakened = fallback_drop_constraints(t.postcond_text);
  REQUIRE(weakened.size() == 2);
  CHECK(weakened[0] ==
        "def insertionSort_postcond_drop1 (xs : List Int) (result : List Int) : Prop :=\n"
        "  List.Perm xs result");
  CHECK(weakened[1] ==
        "def insertionSort_postcond_drop2 (xs : List Int) (result : List Int) : Prop :=\n"
        "  List.Pairwise (\xc2\xb7 \xe2\x89\xa4 \xc2\xb7) result");
}

TEST_CASE("fallback_drop_constraints keeps the remaining clauses conjoined") {
  std::vector<std::string> weakened = fallback_drop_constraints(toy("clamp").postcond_text);
  REQUIRE(weakened.size() == 3);
  for (std::size_t i = 0; i < weakened.size(); ++i) {
    CAPTURE(i);
    DefHeader h = parse_def_header(weakened[i]);
    CHECK(h.name == "clamp_postcond_drop" + std::to_string(i + 1));
    CHECK(split_top_level_conjuncts(h.body).size() == 2);
  }
}

TEST_CASE("fallback_drop_constraints refuses single-clause definitions") {
  CHECK_THROWS_AS((void)fallback_drop_constraints(toy("insertion_sort").precond_text),
                  NotConjunctive);
}

TEST_CASE("impl origins have stable spellings") {
  CHECK(std::string(impl_origin_name(ImplOrigin::RedTeam)) == "red_team");
  CHECK(std::string(impl_origin_name(ImplOrigin::FallbackDrop)) == "fallback_drop");
}

TEST_CASE("provenance_to_jsonl writes one ordered JSON object per line") {
  std::vector<HarvestRecord> records = {
      {"sort#0", "red_team", "post_cand1", "def a : Int := 0"},
      {"sort#1", "fallback_drop", "post_drop2", "def b : Int := 1"},
  };
  std::string jsonl = provenance_to_jsonl(records);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (true) {
    std::size_t nl = jsonl.find('\n', start);
    if (nl == std::string::npos) break;
    lines.push_back(jsonl.substr(start, nl - start));
    start = nl + 1;
  }
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        R"({"id":"sort#0","origin":"red_team","source_spec":"post_cand1",)"
        R"("source_text":"def a : Int := 0"})");
  nlohmann::json parsed = nlohmann::json::parse(lines[1]);
  CHECK(parsed["origin"] == "fallback_drop");
  CHECK(provenance_to_jsonl({}).empty());
}

TEST_CASE("harvest keeps only wrong outputs that satisfy their generating spec") {
  BuiltinBackend backend;
  Task task = to_task(toy("insertion_sort"));
  std::vector<IoPair> pairs = completed_base_pairs(backend, task);

  CandidateSpec weak;
  weak.postcond_name = "insertionSort_postcond_cand1";  // length-only, preloaded
  weak.usable = true;
  REQUIRE(backend.register_impl("t::rev", toy("insertion_sort").adversarial[0].source).status ==
          ProbeStatus::Pass);
  std::vector<AdversarialImpl> impls = {
      {"t::rev", "insertionSort_rev", toy("insertion_sort").adversarial[0].source, 0,
       ImplOrigin::RedTeam}};

  HarvestResult result =
      harvest_unexpected_outputs(backend, backend, task, {&weak, 1}, impls, pairs, {});
  // Reversal only misorders one base fixture: [3, 1, 2]. The reverse-sorted
  // fixture, the empty list, the singleton, and [2, 2, 1] all reverse into
  // the reference output itself.
  REQUIRE(result.unexpected_outputs.size() == 1);
  CHECK(result.unexpected_outputs[0].input.at("xs") ==
        Value::make_sequence(ValueType::ListInt, {3, 1, 2}));
  CHECK(result.unexpected_outputs[0].output ==
        Value::make_sequence(ValueType::ListInt, {2, 1, 3}));
  REQUIRE(result.provenance.size() == 1);
  CHECK(result.provenance[0].id == "insertion_sort#0");
  CHECK(result.provenance[0].origin == "red_team");
  CHECK(result.provenance[0].source_spec == "insertionSort_postcond_cand1");
  CHECK(result.provenance[0].source_text == toy("insertion_sort").adversarial[0].source);
}

TEST_CASE("harvest drops wrong outputs the generating spec itself refutes") {
  BuiltinBackend backend;
  Task task = to_task(toy("insertion_sort"));
  std::vector<IoPair> pairs = completed_base_pairs(backend, task);

  // Against the full ground-truth postcondition the reversed output of
  // [3, 1, 2] is refuted (not sorted), so nothing survives.
  CandidateSpec strict;
  strict.postcond_name = "insertionSort_postcond";
  strict.usable = true;
  REQUIRE(backend.register_impl("t::rev", toy("insertion_sort").adversarial[0].source).status ==
          ProbeStatus::Pass);
  std::vector<AdversarialImpl> impls = {
      {"t::rev", "insertionSort_rev", "", 0, ImplOrigin::RedTeam}};
  HarvestResult result =
      harvest_unexpected_outputs(backend, backend, task, {&strict, 1}, impls, pairs, {});
  CHECK(result.unexpected_outputs.empty());
}

TEST_CASE("harvest ignores implementations that agree with the reference") {
  BuiltinBackend backend;
  Task task = to_task(toy("insertion_sort"));
  std::vector<IoPair> pairs = completed_base_pairs(backend, task);

  CandidateSpec weak;
  weak.postcond_name = "insertionSort_postcond_cand1";
  weak.usable = true;
  REQUIRE(backend.register_impl("t::ref", toy("insertion_sort").reference.source).status ==
          ProbeStatus::Pass);
  std::vector<AdversarialImpl> impls = {{"t::ref", "insertionSort", "", 0, ImplOrigin::RedTeam}};
  HarvestResult result =
      harvest_unexpected_outputs(backend, backend, task, {&weak, 1}, impls, pairs, {});
  CHECK(result.unexpected_outputs.empty());
}

TEST_CASE("harvest deduplicates repeated (input, output) pairs across impls") {
  BuiltinBackend backend;
  const ToyTask& t = toy("insertion_sort");
  Task task = to_task(t);
  std::vector<IoPair> pairs = completed_base_pairs(backend, task);

  CandidateSpec weak;
  weak.postcond_name = "insertionSort_postcond_cand1";
  weak.usable = true;
  // replicate_head and replicate_zero coincide on the all-zero-headed
  // fixture [0, -1, -2, -3, -4]: both produce [0, 0, 0, 0, 0].
  REQUIRE(backend.register_impl("t::rh", t.adversarial[1].source).status == ProbeStatus::Pass);
  REQUIRE(backend.register_impl("t::rz", t.adversarial[2].source).status == ProbeStatus::Pass);
  std::vector<AdversarialImpl> impls = {
      {"t::rh", "insertionSort_replicate_head", "", 0, ImplOrigin::RedTeam},
      {"t::rz", "insertionSort_replicate_zero", "", 0, ImplOrigin::RedTeam}};
  HarvestResult result =
      harvest_unexpected_outputs(backend, backend, task, {&weak, 1}, impls, pairs, {});

  std::set<std::string> keys;
  for (const IoPair& pair : result.unexpected_outputs) {
    keys.insert(canonical_key(pair.input) + '\x1f' + render_value(pair.output, RenderStyle::Json));
  }
  CHECK(keys.size() == result.unexpected_outputs.size());
  // replicate_head: wrong on [0,...], [3,1,2], [2,2,1]. replicate_zero:
  // wrong on the same three plus [1], minus the duplicated [0,0,0,0,0].
  CHECK(result.unexpected_outputs.size() == 6);
  CHECK(result.provenance.size() == result.unexpected_outputs.size());
}

TEST_CASE("the red-team stage scripts end to end on the sorting task") {
  BuiltinBackend backend;
  const ToyTask& t = toy("insertion_sort");
  Task task = to_task(t);
  std::vector<IoPair> pairs = completed_base_pairs(backend, task);

  MockLlm client(mock_llm_script(t, /*seed_rounds=*/0));
  AdversarialResult result =
      run_adversarial_stage(task, client, backend, backend, backend, pairs);

  REQUIRE(result.specs.size() == 1);
  CHECK(result.specs[0].precond_name == "insertionSort_precond_cand1");
  CHECK(result.specs[0].postcond_name == "insertionSort_postcond_cand1");
  CHECK(result.specs[0].usable);
  CHECK_FALSE(result.specs[0].from_fallback);

  REQUIRE(result.impls.size() == 5);
  for (std::size_t i = 0; i < result.impls.size(); ++i) {
    CAPTURE(i);
    CHECK(result.impls[i].ref ==
          "adv::insertion_sort::s1::b" + std::to_string(i + 1));
    CHECK(result.impls[i].name == "insertionSort" + std::to_string(i + 1));
    CHECK(result.impls[i].origin == ImplOrigin::RedTeam);
    CHECK(result.impls[i].spec_index == 0);
    CHECK(backend.has_impl(result.impls[i].ref));
  }

  // Hand-derived count over the five base pairs and the five scripted
  // attackers (reverse, replicate-head, replicate-zero, range, identity)
  // under the length-only candidate postcondition, after deduplication.
  CHECK(result.unexpected_outputs.size() == 13);
  CHECK(result.provenance.size() == 13);

  // Independent re-verification of the retention rule for each survivor:
  // differs from the reference output, and its generating spec holds.
  for (std::size_t i = 0; i < result.unexpected_outputs.size(); ++i) {
    const IoPair& pair = result.unexpected_outputs[i];
    RunOutcome ref = backend.run(task.reference_impl_ref, pair.input, 1000);
    REQUIRE(ref.status == RunStatus::Value);
    CHECK_FALSE(*ref.value == pair.output);
    std::string expr = render_application(result.provenance[i].source_spec, task.signature,
                                          pair.input, pair.output);
    CHECK(backend.guard_decide(expr, false, 1000).status == ProbeStatus::Pass);
  }
}

TEST_CASE("the stage falls back to constraint dropping when no attacker compiles") {
  BuiltinBackend backend;
  const ToyTask& t = toy("vector_add");
  Task task = to_task(t);
  std::vector<IoPair> pairs = completed_base_pairs(backend, task);

  MockLlm client(mock_llm_script(t, /*seed_rounds=*/0));
  AdversarialResult result =
      run_adversarial_stage(task, client, backend, backend, backend, pairs);

  // One scripted spec candidate plus two fallback specs (one per dropped
  // conjunct of the two-clause ground-truth postcondition).
  REQUIRE(result.specs.size() == 3);
  CHECK_FALSE(result.specs[0].from_fallback);
  CHECK(result.specs[1].from_fallback);
  CHECK(result.specs[2].from_fallback);
  CHECK(result.specs[1].postcond_name == "vectorAdd_postcond_drop1");
  CHECK(result.specs[2].postcond_name == "vectorAdd_postcond_drop2");
  CHECK(result.specs[1].precond_name == "vectorAdd_precond");

  // The prose response produced nothing; all four compiled implementations
  // come from re-attacking the weakened contracts.
  REQUIRE(result.impls.size() == 4);
  for (const AdversarialImpl& impl : result.impls) {
    CHECK(impl.origin == ImplOrigin::FallbackDrop);
    CHECK(impl.ref.rfind("adv::vector_add::d", 0) == 0);
    CHECK(impl.spec_index >= 1);
  }

  bool logged_fallback = false;
  bool logged_empty_response = false;
  for (const std::string& line : result.log) {
    if (line.find("dropping constraints") != std::string::npos) logged_fallback = true;
    if (line.find("no adversarial implementation blocks") != std::string::npos)
      logged_empty_response = true;
  }
  CHECK(logged_fallback);
  CHECK(logged_empty_response);

  // Hand-derived harvest over the three base pairs: the empty-array
  // attacker scores twice (vacuous element equation), zeros once, echo-b
  // twice, reverse twice.
  CHECK(result.unexpected_outputs.size() == 7);
  for (std::size_t i = 0; i < result.unexpected_outputs.size(); ++i) {
    const IoPair& pair = result.unexpected_outputs[i];
    CHECK(result.provenance[i].origin == "fallback_drop");
    RunOutcome ref = backend.run(task.reference_impl_ref, pair.input, 1000);
    REQUIRE(ref.status == RunStatus::Value);
    CHECK_FALSE(*ref.value == pair.output);
    std::string expr = render_application(result.provenance[i].source_spec, task.signature,
                                          pair.input, pair.output);
    CHECK(backend.guard_decide(expr, false, 1000).status == ProbeStatus::Pass);
  }
}
