#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "veriscale/backend.hpp"
#include "veriscale/builtin_backend.hpp"
#include "veriscale/builtin_library.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/value.hpp"

using namespace veriscale;

namespace {

InputMap list_input(std::vector<std::int64_t> xs) {
  return {{"xs", Value::make_sequence(ValueType::ListInt, std::move(xs))}};
}

}  // namespace

TEST_CASE("parse_application reads a plain application") {
  ParsedApp app = parse_application("clamp_precond (3) (1) (5)");
  CHECK_FALSE(app.negated);
  CHECK(app.name == "clamp_precond");
  REQUIRE(app.args.size() == 3);
  CHECK(app.args[0] == "3");
  CHECK(app.args[2] == "5");
}

TEST_CASE("parse_application reads the negation prefix") {
  ParsedApp app = parse_application("\xc2\xac insertionSort_postcond ([3, 1]) ([1, 3])");
  CHECK(app.negated);
  CHECK(app.name == "insertionSort_postcond");
  REQUIRE(app.args.size() == 2);
  CHECK(app.args[0] == "[3, 1]");
  CHECK(app.args[1] == "[1, 3]");
}

TEST_CASE("parse_application keeps nested brackets inside one argument") {
  ParsedApp app = parse_application("p ([1, [2, 3]]) ((4))");
  REQUIRE(app.args.size() == 2);
  CHECK(app.args[0] == "[1, [2, 3]]");
  CHECK(app.args[1] == "(4)");
}

TEST_CASE("parse_application ignores brackets inside quoted literals") {
  ParsedApp app = parse_application("q (\"a ) b\") ('(')");
  REQUIRE(app.args.size() == 2);
  CHECK(app.args[0] == "\"a ) b\"");
  CHECK(app.args[1] == "'('");
}

TEST_CASE("parse_application accepts names with underscores and primes") {
  ParsedApp app = parse_application("  \xc2\xac  foo_bar'  (1)  ");
  CHECK(app.negated);
  CHECK(app.name == "foo_bar'");
  REQUIRE(app.args.size() == 1);
}

TEST_CASE("parse_application rejects malformed expressions") {
  CHECK_THROWS_AS(parse_application(""), SyntaxError);
  CHECK_THROWS_AS(parse_application("  \xc2\xac  "), SyntaxError);
  CHECK_THROWS_AS(parse_application("f 3"), SyntaxError);
  CHECK_THROWS_AS(parse_application("f (1"), SyntaxError);
  CHECK_THROWS_AS(parse_application("f (\"x)"), SyntaxError);
  CHECK_THROWS_AS(parse_application("(1) (2)"), SyntaxError);
}

TEST_CASE("check_syntax accepts ground applications of bundled props") {
  BuiltinBackend backend;
  CHECK(backend.check_syntax("clamp_precond (3) (1) (5)").status == ProbeStatus::Pass);
  CHECK(backend.check_syntax("\xc2\xac clamp_precond (3) (7) (2)").status == ProbeStatus::Pass);
  CHECK(backend.check_syntax("insertionSort_postcond ([3, 1]) ([1, 3])").status ==
        ProbeStatus::Pass);
}

TEST_CASE("check_syntax flags arity, typing, and unknown-name errors") {
  BuiltinBackend backend;
  ProbeOutcome arity = backend.check_syntax("clamp_precond (3) (1)");
  CHECK(arity.status == ProbeStatus::Fail);
  CHECK(arity.detail.find("arity mismatch") != std::string::npos);

  ProbeOutcome typing = backend.check_syntax("clamp_precond (-1) (1) (5)");
  CHECK(typing.status == ProbeStatus::Fail);

  ProbeOutcome unknown = backend.check_syntax("no_such_prop (1)");
  CHECK(unknown.status == ProbeStatus::Fail);
  CHECK(unknown.detail.find("unknown constant 'no_such_prop'") != std::string::npos);
}

TEST_CASE("check_syntax compiles and registers a new Prop definition") {
  BuiltinBackend backend;
  CHECK_FALSE(backend.has_prop("extra_prop"));
  ProbeOutcome out = backend.check_syntax(
      "def extra_prop (lo : Nat) (hi : Nat) : Prop :=\n  lo \xe2\x89\xa4 hi");
  CHECK(out.status == ProbeStatus::Pass);
  CHECK(backend.has_prop("extra_prop"));
  CHECK(backend.guard_decide("extra_prop (1) (2)", false, 1000).status == ProbeStatus::Pass);
  CHECK(backend.guard_decide("extra_prop (5) (2)", false, 1000).status == ProbeStatus::Fail);
}

TEST_CASE("check_syntax rejects a Prop outside the clause vocabulary without registering") {
  BuiltinBackend backend;
  ProbeOutcome out = backend.check_syntax(
      "def weird_prop (n : Nat) : Prop :=\n  n.popCount = 3");
  CHECK(out.status == ProbeStatus::Fail);
  CHECK(out.detail.find("unsupported clause") != std::string::npos);
  CHECK_FALSE(backend.has_prop("weird_prop"));
}

TEST_CASE("check_syntax validates an implementation without binding it") {
  BuiltinBackend backend;
  ProbeOutcome out =
      backend.check_syntax("def mySort (xs : List Int) : List Int :=\n  xs.reverse");
  CHECK(out.status == ProbeStatus::Pass);
  CHECK_FALSE(backend.has_impl("mySort"));
  CHECK(backend.run("mySort", list_input({1, 2}), 1000).status == RunStatus::RuntimeFailure);
}

TEST_CASE("check_syntax reports malformed definitions as failures, not throws") {
  BuiltinBackend backend;
  ProbeOutcome out = backend.check_syntax("def broken (n : Nat) := n");
  CHECK(out.status == ProbeStatus::Fail);
  CHECK(!out.detail.empty());
}

TEST_CASE("guard_decide evaluates both polarities of a ground proposition") {
  BuiltinBackend backend;
  // lo <= hi holds for (1, 5).
  CHECK(backend.guard_decide("clamp_precond (3) (1) (5)", false, 1000).status ==
        ProbeStatus::Pass);
  ProbeOutcome neg = backend.guard_decide("clamp_precond (3) (1) (5)", true, 1000);
  CHECK(neg.status == ProbeStatus::Fail);
  CHECK(neg.detail == "decide reduced the guard to false");

  // lo <= hi fails for (7, 2); the negated probe passes.
  CHECK(backend.guard_decide("clamp_precond (3) (7) (2)", false, 1000).status ==
        ProbeStatus::Fail);
  CHECK(backend.guard_decide("clamp_precond (3) (7) (2)", true, 1000).status ==
        ProbeStatus::Pass);
}

TEST_CASE("guard_decide composes expression negation with probe negation") {
  BuiltinBackend backend;
  // ¬ (true prop): expression flips once, probe flips again.
  CHECK(backend.guard_decide("\xc2\xac clamp_precond (3) (1) (5)", false, 1000).status ==
        ProbeStatus::Fail);
  CHECK(backend.guard_decide("\xc2\xac clamp_precond (3) (1) (5)", true, 1000).status ==
        ProbeStatus::Pass);
}

TEST_CASE("guard_decide evaluates multi-clause conjunctions") {
  BuiltinBackend backend;
  CHECK(backend.guard_decide("insertionSort_postcond ([3, 1, 2]) ([1, 2, 3])", false, 1000)
            .status == ProbeStatus::Pass);
  // Sorted but not a permutation.
  CHECK(backend.guard_decide("insertionSort_postcond ([3, 1, 2]) ([1, 2])", false, 1000).status ==
        ProbeStatus::Fail);
  // Permutation but not sorted.
  CHECK(backend.guard_decide("insertionSort_postcond ([3, 1, 2]) ([2, 1, 3])", false, 1000)
            .status == ProbeStatus::Fail);
}

TEST_CASE("guard_decide accepts array-literal arguments") {
  BuiltinBackend backend;
  CHECK(backend.guard_decide("vectorAdd_precond (#[1, 2]) (#[3, 4])", false, 1000).status ==
        ProbeStatus::Pass);
  CHECK(backend.guard_decide("vectorAdd_precond (#[1, 2]) (#[3])", false, 1000).status ==
        ProbeStatus::Fail);
}

TEST_CASE("guard_decide reports unknown constants and binding errors") {
  BuiltinBackend backend;
  ProbeOutcome unknown = backend.guard_decide("ghost_prop (1)", false, 1000);
  CHECK(unknown.status == ProbeStatus::Fail);
  CHECK(unknown.detail.find("unknown constant") != std::string::npos);

  ProbeOutcome arity = backend.guard_decide("clamp_precond (1)", false, 1000);
  CHECK(arity.status == ProbeStatus::Fail);
  CHECK(arity.detail.find("arity mismatch") != std::string::npos);

  ProbeOutcome typing = backend.guard_decide("clamp_precond (-1) (0) (5)", false, 1000);
  CHECK(typing.status == ProbeStatus::Fail);
  CHECK(typing.detail != "decide reduced the guard to false");
}

TEST_CASE("plausible_probe degenerates to evaluation on ground goals") {
  BuiltinBackend backend;
  ProbeOutcome pass = backend.plausible_probe("clamp_precond (3) (1) (5)", false,
                                              "clamp_precond", 1000);
  CHECK(pass.status == ProbeStatus::Pass);
  CHECK(pass.detail.find("no counterexample") != std::string::npos);

  ProbeOutcome refuted = backend.plausible_probe("clamp_precond (3) (7) (2)", false,
                                                 "clamp_precond", 1000);
  CHECK(refuted.status == ProbeStatus::Counterexample);
  CHECK(refuted.detail.find("counterexample") != std::string::npos);
}

TEST_CASE("plausible_probe validates the unfold target and the goal name") {
  BuiltinBackend backend;
  ProbeOutcome bad_unfold =
      backend.plausible_probe("clamp_precond (3) (1) (5)", false, "missing_name", 1000);
  CHECK(bad_unfold.status == ProbeStatus::Fail);
  CHECK(bad_unfold.detail.find("unknown constant 'missing_name'") != std::string::npos);

  // A binding error inside the goal surfaces as Fail, not Counterexample.
  ProbeOutcome bad_goal = backend.plausible_probe("ghost_prop (1)", false, "", 1000);
  CHECK(bad_goal.status == ProbeStatus::Fail);
}

TEST_CASE("run executes bundled implementations") {
  BuiltinBackend backend;
  RunOutcome sorted = backend.run("insertionSort", list_input({3, 1, 2}), 1000);
  REQUIRE(sorted.status == RunStatus::Value);
  CHECK(*sorted.value == Value::make_sequence(ValueType::ListInt, {1, 2, 3}));

  RunOutcome rev = backend.run("insertionSort_rev", list_input({3, 1, 2}), 1000);
  REQUIRE(rev.status == RunStatus::Value);
  CHECK(*rev.value == Value::make_sequence(ValueType::ListInt, {2, 1, 3}));

  RunOutcome head = backend.run("insertionSort_head_singleton", list_input({3, 1, 2}), 1000);
  REQUIRE(head.status == RunStatus::Value);
  CHECK(*head.value == Value::make_sequence(ValueType::ListInt, {3}));

  RunOutcome empty = backend.run("insertionSort_empty", list_input({3, 1, 2}), 1000);
  REQUIRE(empty.status == RunStatus::Value);
  CHECK(*empty.value == Value::make_sequence(ValueType::ListInt, {}));
}

TEST_CASE("run rejects unknown refs and mismatched bindings") {
  BuiltinBackend backend;
  RunOutcome unknown = backend.run("nobody", list_input({1}), 1000);
  CHECK(unknown.status == RunStatus::RuntimeFailure);
  CHECK(unknown.detail.find("unknown implementation 'nobody'") != std::string::npos);

  RunOutcome mismatch = backend.run("insertionSort", {{"ys", Value::make_int(1)}}, 1000);
  CHECK(mismatch.status == RunStatus::RuntimeFailure);
  CHECK(mismatch.detail.find("does not bind") != std::string::npos);
}

TEST_CASE("the diverging fixture exhausts its execution budget") {
  BuiltinBackend backend;
  RunOutcome out = backend.run("spinForever", {{"n", Value::make_nat(0)}}, 50);
  CHECK(out.status == RunStatus::Timeout);
  CHECK(out.detail == "execution budget exhausted");
  CHECK_FALSE(out.value.has_value());
}

TEST_CASE("register_impl binds an executable under the caller's ref") {
  BuiltinBackend backend;
  const ToyTask* toy = find_builtin_task("insertion_sort");
  REQUIRE(toy != nullptr);
  ProbeOutcome out = backend.register_impl("adv::insertion_sort::s1::b1",
                                           toy->adversarial[0].source);  // the reverser
  CHECK(out.status == ProbeStatus::Pass);
  CHECK(backend.has_impl("adv::insertion_sort::s1::b1"));

  RunOutcome run = backend.run("adv::insertion_sort::s1::b1", list_input({4, 5}), 1000);
  REQUIRE(run.status == RunStatus::Value);
  CHECK(*run.value == Value::make_sequence(ValueType::ListInt, {5, 4}));
}

TEST_CASE("register_impl resolves renamed definitions by their shape") {
  BuiltinBackend backend;
  ProbeOutcome out = backend.register_impl(
      "renamed", "def totallyDifferentName (xs : List Int) : List Int :=\n  xs.reverse");
  CHECK(out.status == ProbeStatus::Pass);
  RunOutcome run = backend.run("renamed", list_input({1, 2, 3}), 1000);
  REQUIRE(run.status == RunStatus::Value);
  CHECK(*run.value == Value::make_sequence(ValueType::ListInt, {3, 2, 1}));
}

TEST_CASE("register_impl rejects unusable sources") {
  BuiltinBackend backend;
  ProbeOutcome vocab = backend.register_impl(
      "r1", "def novel (xs : List Int) : List Int :=\n  xs.rotateLeft 2");
  CHECK(vocab.status == ProbeStatus::Fail);
  CHECK(vocab.detail.find("outside the bundled implementation vocabulary") != std::string::npos);
  CHECK_FALSE(backend.has_impl("r1"));

  ProbeOutcome prop = backend.register_impl(
      "r2", "def looksLikeProp (xs : List Int) : Prop :=\n  True");
  CHECK(prop.status == ProbeStatus::Fail);
  CHECK(prop.detail.find("is a Prop") != std::string::npos);

  CHECK(backend.register_impl("", "def f (n : Nat) : Nat :=\n  n").status == ProbeStatus::Fail);
  CHECK(backend.register_impl("r3", "not lean at all").status == ProbeStatus::Fail);
}

TEST_CASE("every bundled prop and implementation is preloaded") {
  BuiltinBackend backend;
  for (const ToyTask& toy : builtin_tasks()) {
    CAPTURE(toy.id);
    CHECK(backend.has_prop(toy.precond_name));
    CHECK(backend.has_prop(toy.postcond_name));
    CHECK(backend.has_prop(toy.precond_name + "_cand1"));
    CHECK(backend.has_prop(toy.postcond_name + "_cand1"));
    CHECK(backend.has_impl(toy.reference.name));
    for (const NamedImpl& adv : toy.adversarial) CHECK(backend.has_impl(adv.name));
  }
}

TEST_CASE("caching executor memoizes repeated runs") {
  BuiltinBackend backend;
  CachingExecutor cached(backend);
  InputMap input = list_input({2, 1});
  RunOutcome first = cached.run("insertionSort", input, 1000);
  RunOutcome second = cached.run("insertionSort", input, 1000);
  REQUIRE(first.status == RunStatus::Value);
  CHECK(*first.value == *second.value);
  CHECK(cached.misses() == 1);
  CHECK(cached.hits() == 1);
  // A different input is a fresh entry.
  (void)cached.run("insertionSort", list_input({9}), 1000);
  CHECK(cached.misses() == 2);
}
