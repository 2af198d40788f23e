#include "veriscale/builtin_library.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/json_io.hpp"
#include "veriscale/lean_text.hpp"
#include "veriscale/numeric.hpp"

namespace veriscale {

namespace {

using VT = ValueType;

// ---- value shorthands ----

Value VI(std::int64_t v) { return Value::make_int(v); }
Value VN(std::int64_t v) { return Value::make_nat(v); }
Value VLi(std::vector<std::int64_t> v) { return Value::make_sequence(VT::ListInt, std::move(v)); }
Value VAi(std::vector<std::int64_t> v) { return Value::make_sequence(VT::ArrayInt, std::move(v)); }
Value VLn(std::vector<std::int64_t> v) { return Value::make_sequence(VT::ListNat, std::move(v)); }
Value VAn(std::vector<std::int64_t> v) { return Value::make_sequence(VT::ArrayNat, std::move(v)); }
Value VC(std::string s) { return Value::make_chars(VT::ListChar, std::move(s)); }
Value VS(std::string s) { return Value::make_chars(VT::String, std::move(s)); }

RunOutcome ok(Value v) { return RunOutcome{RunStatus::Value, std::move(v), ""}; }
RunOutcome runtime_fail(std::string detail) {
  return RunOutcome{RunStatus::RuntimeFailure, std::nullopt, std::move(detail)};
}

constexpr std::size_t kMaxSynthesizedLength = 100000;

// ---- environment accessors used by clause/impl lambdas ----

std::int64_t sca(const InputMap& env, const char* name) { return env.at(name).as_int(); }
const std::vector<std::int64_t>& seq(const InputMap& env, const char* name) {
  return env.at(name).as_ints();
}
const std::string& str(const InputMap& env, const char* name) { return env.at(name).as_chars(); }

bool nondecreasing(const std::vector<std::int64_t>& v) {
  return std::is_sorted(v.begin(), v.end());
}

bool same_multiset(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string stable_dedup(const std::string& cs) {
  std::string out;
  for (char c : cs)
    if (out.find(c) == std::string::npos) out.push_back(c);
  return out;
}

std::int64_t binary_fold(const std::vector<std::int64_t>& digits) {
  std::int64_t acc = 0;
  for (std::int64_t d : digits) acc = saturating_add(saturating_mul(2, acc), d);
  return acc;
}

std::int64_t sat_sum(const std::vector<std::int64_t>& xs, std::int64_t init = 0) {
  std::int64_t acc = init;
  for (std::int64_t x : xs) acc = saturating_add(acc, x);
  return acc;
}

// ---- clause table ----

std::map<std::string, ClauseFn> make_clause_table() {
  std::map<std::string, ClauseFn> t;

  t["True"] = [](const InputMap&) { return true; };

  // binaryToDecimal
  t["digits.all (fun d => d = 0 \xe2\x88\xa8 d = 1)"] = [](const InputMap& env) {
    for (std::int64_t d : seq(env, "digits"))
      if (d != 0 && d != 1) return false;
    return true;
  };
  t["result = digits.foldl (fun acc d => 2 * acc + d) 0"] = [](const InputMap& env) {
    return sca(env, "result") == binary_fold(seq(env, "digits"));
  };
  t["result \xe2\x89\xa5 0"] = [](const InputMap& env) { return sca(env, "result") >= 0; };

  // insertionSort
  t["List.Pairwise (\xc2\xb7 \xe2\x89\xa4 \xc2\xb7) result"] = [](const InputMap& env) {
    return nondecreasing(seq(env, "result"));
  };
  t["List.Perm xs result"] = [](const InputMap& env) {
    return same_multiset(seq(env, "xs"), seq(env, "result"));
  };
  t["result.length = xs.length"] = [](const InputMap& env) {
    return seq(env, "result").size() == seq(env, "xs").size();
  };

  // listMax
  t["xs \xe2\x89\xa0 []"] = [](const InputMap& env) { return !seq(env, "xs").empty(); };
  t["result \xe2\x88\x88 xs"] = [](const InputMap& env) {
    const auto& xs = seq(env, "xs");
    return std::find(xs.begin(), xs.end(), sca(env, "result")) != xs.end();
  };
  t["xs.all (fun x => x \xe2\x89\xa4 result)"] = [](const InputMap& env) {
    std::int64_t r = sca(env, "result");
    for (std::int64_t x : seq(env, "xs"))
      if (x > r) return false;
    return true;
  };

  // clamp
  t["lo \xe2\x89\xa4 hi"] = [](const InputMap& env) { return sca(env, "lo") <= sca(env, "hi"); };
  t["(n < lo \xe2\x86\x92 result = lo)"] = [](const InputMap& env) {
    return sca(env, "n") >= sca(env, "lo") || sca(env, "result") == sca(env, "lo");
  };
  t["(hi < n \xe2\x86\x92 result = hi)"] = [](const InputMap& env) {
    return sca(env, "hi") >= sca(env, "n") || sca(env, "result") == sca(env, "hi");
  };
  t["(lo \xe2\x89\xa4 n \xe2\x86\x92 n \xe2\x89\xa4 hi \xe2\x86\x92 result = n)"] =
      [](const InputMap& env) {
        return sca(env, "lo") > sca(env, "n") || sca(env, "n") > sca(env, "hi") ||
               sca(env, "result") == sca(env, "n");
      };

  // arraySum
  t["xs.all (fun x => x \xe2\x89\xa4 100)"] = [](const InputMap& env) {
    for (std::int64_t x : seq(env, "xs"))
      if (x > 100) return false;
    return true;
  };
  t["result = xs.foldl (\xc2\xb7 + \xc2\xb7) 0"] = [](const InputMap& env) {
    return sca(env, "result") == sat_sum(seq(env, "xs"));
  };
  t["(xs.size = 0 \xe2\x86\x92 result = 0)"] = [](const InputMap& env) {
    return !seq(env, "xs").empty() || sca(env, "result") == 0;
  };

  // vectorAdd
  t["a.size = b.size"] = [](const InputMap& env) {
    return seq(env, "a").size() == seq(env, "b").size();
  };
  t["result.size = a.size"] = [](const InputMap& env) {
    return seq(env, "result").size() == seq(env, "a").size();
  };
  t["result.size = b.size"] = [](const InputMap& env) {
    return seq(env, "result").size() == seq(env, "b").size();
  };
  t["(\xe2\x88\x80 i, i < result.size \xe2\x86\x92 result[i]! = a[i]! + b[i]!)"] =
      [](const InputMap& env) {
        const auto& a = seq(env, "a");
        const auto& b = seq(env, "b");
        const auto& r = seq(env, "result");
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (i >= a.size() || i >= b.size()) return false;  // a[i]! would panic
          if (static_cast<__int128>(a[i]) + b[i] != static_cast<__int128>(r[i])) return false;
        }
        return true;
      };

  // dedupChars
  t["cs.all (fun c => c.isLower)"] = [](const InputMap& env) {
    for (char c : str(env, "cs"))
      if (c < 'a' || c > 'z') return false;
    return true;
  };
  t["List.Nodup result"] = [](const InputMap& env) {
    const std::string& r = str(env, "result");
    return std::set<char>(r.begin(), r.end()).size() == r.size();
  };
  t["result = cs.foldl (fun acc c => if c \xe2\x88\x88 acc then acc else acc ++ [c]) []"] =
      [](const InputMap& env) { return str(env, "result") == stable_dedup(str(env, "cs")); };

  // reverseString
  t["s \xe2\x89\xa0 \"\""] = [](const InputMap& env) { return !str(env, "s").empty(); };
  t["result.length = s.length"] = [](const InputMap& env) {
    return str(env, "result").size() == str(env, "s").size();
  };
  t["result.data = s.data.reverse"] = [](const InputMap& env) {
    std::string rev = str(env, "s");
    std::reverse(rev.begin(), rev.end());
    return str(env, "result") == rev;
  };

  // absDiff
  t["a \xe2\x89\xa4 b"] = [](const InputMap& env) { return sca(env, "a") <= sca(env, "b"); };
  t["Int.ofNat result = b - a"] = [](const InputMap& env) {
    return static_cast<__int128>(sca(env, "result")) ==
           static_cast<__int128>(sca(env, "b")) - sca(env, "a");
  };
  t["(b < a \xe2\x86\x92 result = 0)"] = [](const InputMap& env) {
    return sca(env, "b") >= sca(env, "a") || sca(env, "result") == 0;
  };

  // takePrefix
  t["n \xe2\x89\xa4 xs.length"] = [](const InputMap& env) {
    return static_cast<std::size_t>(sca(env, "n")) <= seq(env, "xs").size();
  };
  t["result.length = n"] = [](const InputMap& env) {
    return seq(env, "result").size() == static_cast<std::size_t>(sca(env, "n"));
  };
  t["result = xs.take n"] = [](const InputMap& env) {
    const auto& xs = seq(env, "xs");
    std::size_t n = std::min(static_cast<std::size_t>(sca(env, "n")), xs.size());
    return seq(env, "result") ==
           std::vector<std::int64_t>(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n));
  };

  return t;
}

// ---- task construction ----

ParamSignature sig(std::initializer_list<Param> ps) { return ParamSignature{ps}; }

std::string def_src(const std::string& name, const std::string& raw_params,
                    const std::string& ret, const std::string& body) {
  return render_def(name, raw_params, ret, body);
}

NamedImpl impl(std::string name, const std::string& raw_params, const std::string& ret,
               const std::string& body, ImplFn fn) {
  return NamedImpl{name, def_src(name, raw_params, ret, body), std::move(fn)};
}

std::vector<ToyTask> make_tasks() {
  std::vector<ToyTask> tasks;

  // -------- binary_to_decimal --------
  {
    ToyTask t;
    t.id = "binary_to_decimal";
    t.description =
        "This task requires writing a Lean 4 function that converts a binary number "
        "represented as a list of digits (0 or 1) into its corresponding decimal value. "
        "The list is ordered in big-endian format, meaning the most significant digit "
        "comes first. The function should interpret the list as a binary number and "
        "return its decimal representation as a natural number. Every digit in the "
        "input list must be 0 or 1.";
    t.signature = sig({{"digits", VT::ListNat}});
    t.output_type = VT::Nat;
    t.impl_name = "binaryToDecimal";
    const std::string params = "(digits : List Nat)";
    t.impl_signature = "def binaryToDecimal " + params + " : Nat";
    t.precond_name = "binaryToDecimal_precond";
    t.postcond_name = "binaryToDecimal_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop",
                             "digits.all (fun d => d = 0 \xe2\x88\xa8 d = 1)");
    t.postcond_text = def_src(t.postcond_name, params + " (result : Nat)", "Prop",
                              "result = digits.foldl (fun acc d => 2 * acc + d) 0");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop",
                "digits.all (fun d => d = 0 \xe2\x88\xa8 d = 1)");
    t.candidate_postcond_text =
        def_src(t.postcond_name + "_cand1", params + " (result : Nat)", "Prop",
                "result \xe2\x89\xa5 0");
    t.reference = impl(t.impl_name, params, "Nat",
                       "digits.foldl (fun acc d => 2 * acc + d) 0", [](const InputMap& in) {
                         return ok(VN(binary_fold(seq(in, "digits"))));
                       });
    t.adversarial = {
        impl("binaryToDecimal_len", params, "Nat", "digits.length",
             [](const InputMap& in) {
               return ok(VN(static_cast<std::int64_t>(seq(in, "digits").size())));
             }),
        impl("binaryToDecimal_zero", params, "Nat", "0",
             [](const InputMap&) { return ok(VN(0)); }),
        impl("binaryToDecimal_sum", params, "Nat", "digits.foldl (\xc2\xb7 + \xc2\xb7) 0",
             [](const InputMap& in) { return ok(VN(sat_sum(seq(in, "digits")))); }),
        impl("binaryToDecimal_head", params, "Nat", "digits.headD 0",
             [](const InputMap& in) {
               const auto& d = seq(in, "digits");
               return ok(VN(d.empty() ? 0 : d.front()));
             }),
        impl("binaryToDecimal_foldr", params, "Nat",
             "digits.foldr (fun d acc => 2 * acc + d) 0", [](const InputMap& in) {
               const auto& d = seq(in, "digits");
               std::int64_t acc = 0;
               for (auto it = d.rbegin(); it != d.rend(); ++it)
                 acc = saturating_add(saturating_mul(2, acc), *it);
               return ok(VN(acc));
             }),
    };
    t.base_expected = {{{"digits", VLn({1, 0, 1})}}, {{"digits", VLn({})}},
                       {{"digits", VLn({1, 1, 1, 1})}}};
    t.base_unexpected = {{{"digits", VLn({1, 2, 1})}}, {{"digits", VLn({3})}},
                         {{"digits", VLn({0, 5})}}};
    t.mock_seed_inputs = {{{"digits", VLn({0})}},          {{"digits", VLn({1, 1})}},
                          {{"digits", VLn({1, 0, 1, 0})}}, {{"digits", VLn({2})}},
                          {{"digits", VLn({0, 0, 0})}},    {{"digits", VLn({5, 0})}},
                          {{"digits", VLn({1, 1, 1, 1, 1, 1})}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- insertion_sort --------
  {
    ToyTask t;
    t.id = "insertion_sort";
    t.description =
        "Implement the insertion sort algorithm in Lean 4. The function takes a single "
        "list of integers as input and returns a new list that contains the same "
        "integers in ascending order. Any list of integers is a valid input.";
    t.signature = sig({{"xs", VT::ListInt}});
    t.output_type = VT::ListInt;
    t.impl_name = "insertionSort";
    const std::string params = "(xs : List Int)";
    t.impl_signature = "def insertionSort " + params + " : List Int";
    t.precond_name = "insertionSort_precond";
    t.postcond_name = "insertionSort_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "True");
    t.postcond_text =
        def_src(t.postcond_name, params + " (result : List Int)", "Prop",
                "List.Pairwise (\xc2\xb7 \xe2\x89\xa4 \xc2\xb7) result \xe2\x88\xa7 "
                "List.Perm xs result");
    t.candidate_precond_text = def_src(t.precond_name + "_cand1", params, "Prop", "True");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1",
                                        params + " (result : List Int)", "Prop",
                                        "result.length = xs.length");
    t.reference = impl(t.impl_name, params, "List Int", "xs.mergeSort (\xc2\xb7 \xe2\x89\xa4 \xc2\xb7)",
                       [](const InputMap& in) {
                         std::vector<std::int64_t> xs = seq(in, "xs");
                         std::stable_sort(xs.begin(), xs.end());
                         return ok(VLi(std::move(xs)));
                       });
    t.adversarial = {
        impl("insertionSort_rev", params, "List Int", "xs.reverse",
             [](const InputMap& in) {
               std::vector<std::int64_t> xs = seq(in, "xs");
               std::reverse(xs.begin(), xs.end());
               return ok(VLi(std::move(xs)));
             }),
        impl("insertionSort_replicate_head", params, "List Int",
             "match xs with\n  | [] => []\n  | x :: _ => List.replicate xs.length x",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               if (xs.empty()) return ok(VLi({}));
               return ok(VLi(std::vector<std::int64_t>(xs.size(), xs.front())));
             }),
        impl("insertionSort_replicate_zero", params, "List Int", "List.replicate xs.length 0",
             [](const InputMap& in) {
               return ok(VLi(std::vector<std::int64_t>(seq(in, "xs").size(), 0)));
             }),
        impl("insertionSort_range", params, "List Int",
             "(List.range xs.length).map (fun n => Int.ofNat n)",
             [](const InputMap& in) {
               std::vector<std::int64_t> out(seq(in, "xs").size());
               for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::int64_t>(i);
               return ok(VLi(std::move(out)));
             }),
        impl("insertionSort_empty", params, "List Int", "[]",
             [](const InputMap&) { return ok(VLi({})); }),
        impl("insertionSort_identity", params, "List Int", "xs",
             [](const InputMap& in) { return ok(VLi(seq(in, "xs"))); }),
        impl("insertionSort_head_singleton", params, "List Int",
             "match xs with\n  | [] => []\n  | x :: _ => [x]",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               if (xs.empty()) return ok(VLi({}));
               return ok(VLi({xs.front()}));
             }),
    };
    t.base_expected = {{{"xs", VLi({0, -1, -2, -3, -4})}}, {{"xs", VLi({})}},
                       {{"xs", VLi({1})}},                 {{"xs", VLi({3, 1, 2})}},
                       {{"xs", VLi({2, 2, 1})}}};
    t.base_unexpected = {};
    t.mock_seed_inputs = {{{"xs", VLi({5, 3, 8})}}, {{"xs", VLi({-1, -1})}},
                          {{"xs", VLi({10})}},      {{"xs", VLi({7, 7, 7})}},
                          {{"xs", VLi({1, 2, 3})}}, {{"xs", VLi({-3, 2, -3})}}};
    // Response embeds the five length-preserving attackers (indexes 0-3, 5);
    // the remaining two stay available for direct kill-matrix fixtures.
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 5}};
    tasks.push_back(std::move(t));
  }

  // -------- list_max --------
  {
    ToyTask t;
    t.id = "list_max";
    t.description =
        "Return the maximum element of a list of integers. The input list must be "
        "non-empty; the returned value must occur in the list and be greater than or "
        "equal to every element.";
    t.signature = sig({{"xs", VT::ListInt}});
    t.output_type = VT::Int;
    t.impl_name = "listMax";
    const std::string params = "(xs : List Int)";
    t.impl_signature = "def listMax " + params + " : Int";
    t.precond_name = "listMax_precond";
    t.postcond_name = "listMax_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "xs \xe2\x89\xa0 []");
    t.postcond_text = def_src(t.postcond_name, params + " (result : Int)", "Prop",
                              "result \xe2\x88\x88 xs \xe2\x88\xa7 "
                              "xs.all (fun x => x \xe2\x89\xa4 result)");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop", "xs \xe2\x89\xa0 []");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1", params + " (result : Int)",
                                        "Prop", "result \xe2\x88\x88 xs");
    t.reference = impl(t.impl_name, params, "Int", "xs.foldl max (xs.headD 0)",
                       [](const InputMap& in) {
                         const auto& xs = seq(in, "xs");
                         std::int64_t m = xs.empty() ? 0 : xs.front();
                         for (std::int64_t x : xs) m = std::max(m, x);
                         return ok(VI(m));
                       });
    t.adversarial = {
        impl("listMax_head", params, "Int", "xs.headD 0",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               return ok(VI(xs.empty() ? 0 : xs.front()));
             }),
        impl("listMax_min", params, "Int", "xs.foldl min (xs.headD 0)",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               std::int64_t m = xs.empty() ? 0 : xs.front();
               for (std::int64_t x : xs) m = std::min(m, x);
               return ok(VI(m));
             }),
        impl("listMax_zero", params, "Int", "0", [](const InputMap&) { return ok(VI(0)); }),
        impl("listMax_sum", params, "Int", "xs.foldl (\xc2\xb7 + \xc2\xb7) 0",
             [](const InputMap& in) { return ok(VI(sat_sum(seq(in, "xs")))); }),
        impl("listMax_last", params, "Int", "xs.getLastD 0",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               return ok(VI(xs.empty() ? 0 : xs.back()));
             }),
    };
    t.base_expected = {{{"xs", VLi({3, 1, 2})}}, {{"xs", VLi({5})}}, {{"xs", VLi({-2, -7})}}};
    t.base_unexpected = {{{"xs", VLi({})}}};
    t.mock_seed_inputs = {{{"xs", VLi({1, 2, 3})}}, {{"xs", VLi({9, 9})}},
                          {{"xs", VLi({0})}},       {{"xs", VLi({})}},
                          {{"xs", VLi({-5, 5})}},   {{"xs", VLi({7, 3, 7})}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- clamp --------
  {
    ToyTask t;
    t.id = "clamp";
    t.description =
        "Clamp a natural number n into the inclusive range [lo, hi]: return lo when n "
        "is below the range, hi when n is above it, and n itself otherwise. The bounds "
        "must satisfy lo \xe2\x89\xa4 hi.";
    t.signature = sig({{"n", VT::Nat}, {"lo", VT::Nat}, {"hi", VT::Nat}});
    t.output_type = VT::Nat;
    t.impl_name = "clamp";
    const std::string params = "(n : Nat) (lo : Nat) (hi : Nat)";
    t.impl_signature = "def clamp " + params + " : Nat";
    t.precond_name = "clamp_precond";
    t.postcond_name = "clamp_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "lo \xe2\x89\xa4 hi");
    t.postcond_text = def_src(
        t.postcond_name, params + " (result : Nat)", "Prop",
        "(n < lo \xe2\x86\x92 result = lo) \xe2\x88\xa7 (hi < n \xe2\x86\x92 result = hi) "
        "\xe2\x88\xa7 (lo \xe2\x89\xa4 n \xe2\x86\x92 n \xe2\x89\xa4 hi \xe2\x86\x92 result = n)");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop", "lo \xe2\x89\xa4 hi");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1", params + " (result : Nat)",
                                        "Prop", "(hi < n \xe2\x86\x92 result = hi)");
    t.reference = impl(t.impl_name, params, "Nat",
                       "if n < lo then lo else if hi < n then hi else n",
                       [](const InputMap& in) {
                         std::int64_t n = sca(in, "n"), lo = sca(in, "lo"), hi = sca(in, "hi");
                         return ok(VN(n < lo ? lo : (hi < n ? hi : n)));
                       });
    t.adversarial = {
        impl("clamp_identity", params, "Nat", "n",
             [](const InputMap& in) { return ok(VN(sca(in, "n"))); }),
        impl("clamp_lo", params, "Nat", "lo",
             [](const InputMap& in) { return ok(VN(sca(in, "lo"))); }),
        impl("clamp_hi", params, "Nat", "hi",
             [](const InputMap& in) { return ok(VN(sca(in, "hi"))); }),
        impl("clamp_min_hi", params, "Nat", "min n hi",
             [](const InputMap& in) { return ok(VN(std::min(sca(in, "n"), sca(in, "hi")))); }),
        impl("clamp_max_lo", params, "Nat", "max n lo",
             [](const InputMap& in) { return ok(VN(std::max(sca(in, "n"), sca(in, "lo")))); }),
    };
    t.base_expected = {{{"n", VN(5)}, {"lo", VN(1)}, {"hi", VN(10)}},
                       {{"n", VN(0)}, {"lo", VN(2)}, {"hi", VN(4)}},
                       {{"n", VN(99)}, {"lo", VN(0)}, {"hi", VN(50)}}};
    t.base_unexpected = {{{"n", VN(3)}, {"lo", VN(7)}, {"hi", VN(2)}}};
    t.mock_seed_inputs = {{{"n", VN(1)}, {"lo", VN(1)}, {"hi", VN(1)}},
                          {{"n", VN(10)}, {"lo", VN(0)}, {"hi", VN(5)}},
                          {{"n", VN(0)}, {"lo", VN(0)}, {"hi", VN(0)}},
                          {{"n", VN(4)}, {"lo", VN(6)}, {"hi", VN(3)}},
                          {{"n", VN(7)}, {"lo", VN(7)}, {"hi", VN(9)}},
                          {{"n", VN(2)}, {"lo", VN(5)}, {"hi", VN(1)}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- array_sum --------
  {
    ToyTask t;
    t.id = "array_sum";
    t.description =
        "Compute the sum of an array of natural numbers. Every element of the input "
        "array must be at most 100.";
    t.signature = sig({{"xs", VT::ArrayNat}});
    t.output_type = VT::Nat;
    t.impl_name = "arraySum";
    const std::string params = "(xs : Array Nat)";
    t.impl_signature = "def arraySum " + params + " : Nat";
    t.precond_name = "arraySum_precond";
    t.postcond_name = "arraySum_postcond";
    t.precond_text =
        def_src(t.precond_name, params, "Prop", "xs.all (fun x => x \xe2\x89\xa4 100)");
    t.postcond_text = def_src(t.postcond_name, params + " (result : Nat)", "Prop",
                              "result = xs.foldl (\xc2\xb7 + \xc2\xb7) 0");
    t.candidate_precond_text = def_src(t.precond_name + "_cand1", params, "Prop",
                                       "xs.all (fun x => x \xe2\x89\xa4 100)");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1", params + " (result : Nat)",
                                        "Prop", "(xs.size = 0 \xe2\x86\x92 result = 0)");
    t.reference = impl(t.impl_name, params, "Nat", "xs.foldl (\xc2\xb7 + \xc2\xb7) 0",
                       [](const InputMap& in) { return ok(VN(sat_sum(seq(in, "xs")))); });
    t.adversarial = {
        impl("arraySum_size", params, "Nat", "xs.size",
             [](const InputMap& in) {
               return ok(VN(static_cast<std::int64_t>(seq(in, "xs").size())));
             }),
        impl("arraySum_zero", params, "Nat", "0", [](const InputMap&) { return ok(VN(0)); }),
        impl("arraySum_max", params, "Nat", "xs.foldl max 0",
             [](const InputMap& in) {
               std::int64_t m = 0;
               for (std::int64_t x : seq(in, "xs")) m = std::max(m, x);
               return ok(VN(m));
             }),
        impl("arraySum_plus_one", params, "Nat", "xs.foldl (\xc2\xb7 + \xc2\xb7) 1",
             [](const InputMap& in) { return ok(VN(sat_sum(seq(in, "xs"), 1))); }),
        impl("arraySum_first", params, "Nat", "xs.getD 0 0",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               return ok(VN(xs.empty() ? 0 : xs.front()));
             }),
    };
    t.base_expected = {{{"xs", VAn({1, 2, 3})}}, {{"xs", VAn({})}}, {{"xs", VAn({100})}}};
    t.base_unexpected = {{{"xs", VAn({101})}}, {{"xs", VAn({200, 1})}}};
    t.mock_seed_inputs = {{{"xs", VAn({50, 25})}}, {{"xs", VAn({101})}},
                          {{"xs", VAn({99, 1, 0})}}, {{"xs", VAn({})}},
                          {{"xs", VAn({100, 100})}}, {{"xs", VAn({3, 100, 97})}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- vector_add --------
  {
    ToyTask t;
    t.id = "vector_add";
    t.description =
        "Element-wise addition of two integer arrays. The two input arrays must have "
        "the same size; the result has that size and result[i] = a[i] + b[i] for every "
        "index i.";
    t.signature = sig({{"a", VT::ArrayInt}, {"b", VT::ArrayInt}});
    t.output_type = VT::ArrayInt;
    t.impl_name = "vectorAdd";
    const std::string params = "(a : Array Int) (b : Array Int)";
    t.impl_signature = "def vectorAdd " + params + " : Array Int";
    t.precond_name = "vectorAdd_precond";
    t.postcond_name = "vectorAdd_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "a.size = b.size");
    t.postcond_text =
        def_src(t.postcond_name, params + " (result : Array Int)", "Prop",
                "result.size = a.size \xe2\x88\xa7 (\xe2\x88\x80 i, i < result.size "
                "\xe2\x86\x92 result[i]! = a[i]! + b[i]!)");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop", "a.size = b.size");
    t.candidate_postcond_text =
        def_src(t.postcond_name + "_cand1", params + " (result : Array Int)", "Prop",
                "result.size = b.size");
    t.reference = impl(t.impl_name, params, "Array Int", "a.zipWith b (\xc2\xb7 + \xc2\xb7)",
                       [](const InputMap& in) {
                         const auto& a = seq(in, "a");
                         const auto& b = seq(in, "b");
                         std::size_t n = std::min(a.size(), b.size());
                         std::vector<std::int64_t> out(n);
                         for (std::size_t i = 0; i < n; ++i) out[i] = saturating_add(a[i], b[i]);
                         return ok(VAi(std::move(out)));
                       });
    t.adversarial = {
        impl("vectorAdd_echo_a", params, "Array Int", "a",
             [](const InputMap& in) { return ok(VAi(seq(in, "a"))); }),
        impl("vectorAdd_zeros", params, "Array Int", "Array.mkArray a.size 0",
             [](const InputMap& in) {
               return ok(VAi(std::vector<std::int64_t>(seq(in, "a").size(), 0)));
             }),
        impl("vectorAdd_echo_b", params, "Array Int", "b",
             [](const InputMap& in) { return ok(VAi(seq(in, "b"))); }),
        impl("vectorAdd_empty", params, "Array Int", "#[]",
             [](const InputMap&) { return ok(VAi({})); }),
        impl("vectorAdd_rev_a", params, "Array Int", "a.reverse",
             [](const InputMap& in) {
               std::vector<std::int64_t> a = seq(in, "a");
               std::reverse(a.begin(), a.end());
               return ok(VAi(std::move(a)));
             }),
    };
    t.base_expected = {{{"a", VAi({1, 2})}, {"b", VAi({3, 4})}},
                       {{"a", VAi({})}, {"b", VAi({})}},
                       {{"a", VAi({-1})}, {"b", VAi({1})}}};
    t.base_unexpected = {{{"a", VAi({1})}, {"b", VAi({})}},
                         {{"a", VAi({1, 2, 3})}, {"b", VAi({1})}}};
    t.mock_seed_inputs = {{{"a", VAi({1, 2})}, {"b", VAi({-1, -2})}},
                          {{"a", VAi({0})}, {"b", VAi({0})}},
                          {{"a", VAi({})}, {"b", VAi({1})}},
                          {{"a", VAi({3, 3, 3})}, {"b", VAi({1, 1, 1})}},
                          {{"a", VAi({-5})}, {"b", VAi({5})}},
                          {{"a", VAi({2, 4})}, {"b", VAi({1})}}};
    // First red-team response is prose (no blocks): the pipeline falls back
    // to constraint dropping, then re-attacks each weakened spec. The
    // ground-truth postcondition has two conjuncts, so two more responses:
    // one against the element-equation-only variant (vacuous on #[]) and
    // one against the size-only variant.
    t.mock_adversarial_blocks = {{}, {3}, {1, 2, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- dedup_chars --------
  {
    ToyTask t;
    t.id = "dedup_chars";
    t.description =
        "Remove duplicate characters from a list of lowercase letters, keeping the "
        "first occurrence of each character in order. Every character of the input "
        "must be a lowercase letter.";
    t.signature = sig({{"cs", VT::ListChar}});
    t.output_type = VT::ListChar;
    t.impl_name = "dedupChars";
    const std::string params = "(cs : List Char)";
    t.impl_signature = "def dedupChars " + params + " : List Char";
    t.precond_name = "dedupChars_precond";
    t.postcond_name = "dedupChars_postcond";
    t.precond_text =
        def_src(t.precond_name, params, "Prop", "cs.all (fun c => c.isLower)");
    t.postcond_text = def_src(
        t.postcond_name, params + " (result : List Char)", "Prop",
        "List.Nodup result \xe2\x88\xa7 result = cs.foldl (fun acc c => if c \xe2\x88\x88 acc "
        "then acc else acc ++ [c]) []");
    t.candidate_precond_text = def_src(t.precond_name + "_cand1", params, "Prop",
                                       "cs.all (fun c => c.isLower)");
    t.candidate_postcond_text = def_src(
        t.postcond_name + "_cand1", params + " (result : List Char)", "Prop",
        "List.Nodup result");
    t.reference = impl(t.impl_name, params, "List Char",
                       "cs.foldl (fun acc c => if c \xe2\x88\x88 acc then acc else acc ++ [c]) []",
                       [](const InputMap& in) { return ok(VC(stable_dedup(str(in, "cs")))); });
    t.adversarial = {
        impl("dedupChars_identity", params, "List Char", "cs",
             [](const InputMap& in) { return ok(VC(str(in, "cs"))); }),
        impl("dedupChars_empty", params, "List Char", "[]",
             [](const InputMap&) { return ok(VC("")); }),
        impl("dedupChars_take_one", params, "List Char", "cs.take 1",
             [](const InputMap& in) { return ok(VC(str(in, "cs").substr(0, 1))); }),
        impl("dedupChars_reverse", params, "List Char", "cs.reverse",
             [](const InputMap& in) {
               std::string cs = str(in, "cs");
               std::reverse(cs.begin(), cs.end());
               return ok(VC(std::move(cs)));
             }),
        impl("dedupChars_const", params, "List Char", "['a']",
             [](const InputMap&) { return ok(VC("a")); }),
    };
    t.base_expected = {{{"cs", VC("aba")}}, {{"cs", VC("")}}, {{"cs", VC("z")}}};
    t.base_unexpected = {{{"cs", VC("A")}}, {{"cs", VC("a1")}}, {{"cs", VC("a ")}}};
    t.mock_seed_inputs = {{{"cs", VC("aab")}}, {{"cs", VC("xyzx")}}, {{"cs", VC("q")}},
                          {{"cs", VC("aB")}},  {{"cs", VC("mnm")}},  {{"cs", VC("1a")}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- reverse_string --------
  {
    ToyTask t;
    t.id = "reverse_string";
    t.description =
        "Reverse a string: the result contains the characters of the input in reverse "
        "order. The input string must be non-empty.";
    t.signature = sig({{"s", VT::String}});
    t.output_type = VT::String;
    t.impl_name = "reverseString";
    const std::string params = "(s : String)";
    t.impl_signature = "def reverseString " + params + " : String";
    t.precond_name = "reverseString_precond";
    t.postcond_name = "reverseString_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "s \xe2\x89\xa0 \"\"");
    t.postcond_text = def_src(t.postcond_name, params + " (result : String)", "Prop",
                              "result.length = s.length \xe2\x88\xa7 "
                              "result.data = s.data.reverse");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop", "s \xe2\x89\xa0 \"\"");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1", params + " (result : String)",
                                        "Prop", "result.length = s.length");
    t.reference = impl(t.impl_name, params, "String", "String.mk s.data.reverse",
                       [](const InputMap& in) {
                         std::string s = str(in, "s");
                         std::reverse(s.begin(), s.end());
                         return ok(VS(std::move(s)));
                       });
    t.adversarial = {
        impl("reverseString_identity", params, "String", "s",
             [](const InputMap& in) { return ok(VS(str(in, "s"))); }),
        impl("reverseString_empty", params, "String", "\"\"",
             [](const InputMap&) { return ok(VS("")); }),
        impl("reverseString_first", params, "String", "String.mk (s.data.take 1)",
             [](const InputMap& in) { return ok(VS(str(in, "s").substr(0, 1))); }),
        impl("reverseString_double", params, "String", "s ++ s",
             [](const InputMap& in) {
               const std::string& s = str(in, "s");
               if (s.size() > kMaxSynthesizedLength) return runtime_fail("output too large");
               return ok(VS(s + s));
             }),
        impl("reverseString_const", params, "String", "\"a\"",
             [](const InputMap&) { return ok(VS("a")); }),
    };
    t.base_expected = {{{"s", VS("abc")}}, {{"s", VS("a")}}, {{"s", VS("hello")}}};
    t.base_unexpected = {{{"s", VS("")}}};
    t.mock_seed_inputs = {{{"s", VS("ab")}}, {{"s", VS("racecar")}}, {{"s", VS("")}},
                          {{"s", VS("x y")}}, {{"s", VS("aa")}},     {{"s", VS("ba")}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- abs_diff --------
  {
    ToyTask t;
    t.id = "abs_diff";
    t.description =
        "Compute the difference b - a of two integers a and b as a natural number. "
        "The inputs must satisfy a \xe2\x89\xa4 b, so the difference is non-negative.";
    t.signature = sig({{"a", VT::Int}, {"b", VT::Int}});
    t.output_type = VT::Nat;
    t.impl_name = "absDiff";
    const std::string params = "(a : Int) (b : Int)";
    t.impl_signature = "def absDiff " + params + " : Nat";
    t.precond_name = "absDiff_precond";
    t.postcond_name = "absDiff_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "a \xe2\x89\xa4 b");
    t.postcond_text = def_src(t.postcond_name, params + " (result : Nat)", "Prop",
                              "Int.ofNat result = b - a");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop", "a \xe2\x89\xa4 b");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1", params + " (result : Nat)",
                                        "Prop", "(b < a \xe2\x86\x92 result = 0)");
    t.reference = impl(t.impl_name, params, "Nat", "(b - a).toNat",
                       [](const InputMap& in) {
                         return ok(VN(clip_to_nat(saturating_sub(sca(in, "b"), sca(in, "a")))));
                       });
    t.adversarial = {
        impl("absDiff_zero", params, "Nat", "0", [](const InputMap&) { return ok(VN(0)); }),
        impl("absDiff_plus_one", params, "Nat", "(b - a).toNat + 1",
             [](const InputMap& in) {
               std::int64_t d = clip_to_nat(saturating_sub(sca(in, "b"), sca(in, "a")));
               return ok(VN(saturating_add(d, 1)));
             }),
        impl("absDiff_swapped", params, "Nat", "(a - b).toNat",
             [](const InputMap& in) {
               return ok(VN(clip_to_nat(saturating_sub(sca(in, "a"), sca(in, "b")))));
             }),
        impl("absDiff_b_nat", params, "Nat", "b.toNat",
             [](const InputMap& in) { return ok(VN(clip_to_nat(sca(in, "b")))); }),
        impl("absDiff_double", params, "Nat", "(b - a).toNat * 2",
             [](const InputMap& in) {
               std::int64_t d = clip_to_nat(saturating_sub(sca(in, "b"), sca(in, "a")));
               return ok(VN(saturating_mul(d, 2)));
             }),
    };
    t.base_expected = {{{"a", VI(-3)}, {"b", VI(4)}},
                       {{"a", VI(0)}, {"b", VI(0)}},
                       {{"a", VI(-5)}, {"b", VI(-2)}}};
    t.base_unexpected = {{{"a", VI(4)}, {"b", VI(-3)}}, {{"a", VI(1)}, {"b", VI(0)}}};
    t.mock_seed_inputs = {{{"a", VI(0)}, {"b", VI(5)}},  {{"a", VI(-2)}, {"b", VI(2)}},
                          {{"a", VI(3)}, {"b", VI(3)}},  {{"a", VI(5)}, {"b", VI(0)}},
                          {{"a", VI(-9)}, {"b", VI(-4)}}, {{"a", VI(2)}, {"b", VI(-2)}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  // -------- take_prefix --------
  {
    ToyTask t;
    t.id = "take_prefix";
    t.description =
        "Return the first n elements of a list of integers, preserving their order. "
        "The count n must be at most the length of the list.";
    t.signature = sig({{"xs", VT::ListInt}, {"n", VT::Nat}});
    t.output_type = VT::ListInt;
    t.impl_name = "takePrefix";
    const std::string params = "(xs : List Int) (n : Nat)";
    t.impl_signature = "def takePrefix " + params + " : List Int";
    t.precond_name = "takePrefix_precond";
    t.postcond_name = "takePrefix_postcond";
    t.precond_text = def_src(t.precond_name, params, "Prop", "n \xe2\x89\xa4 xs.length");
    t.postcond_text = def_src(t.postcond_name, params + " (result : List Int)", "Prop",
                              "result.length = n \xe2\x88\xa7 result = xs.take n");
    t.candidate_precond_text =
        def_src(t.precond_name + "_cand1", params, "Prop", "n \xe2\x89\xa4 xs.length");
    t.candidate_postcond_text = def_src(t.postcond_name + "_cand1",
                                        params + " (result : List Int)", "Prop",
                                        "result.length = n");
    t.reference = impl(t.impl_name, params, "List Int", "xs.take n",
                       [](const InputMap& in) {
                         const auto& xs = seq(in, "xs");
                         std::size_t n =
                             std::min(static_cast<std::size_t>(sca(in, "n")), xs.size());
                         return ok(VLi(std::vector<std::int64_t>(
                             xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n))));
                       });
    t.adversarial = {
        impl("takePrefix_drop", params, "List Int", "xs.drop n",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               std::size_t n = std::min(static_cast<std::size_t>(sca(in, "n")), xs.size());
               return ok(VLi(std::vector<std::int64_t>(
                   xs.begin() + static_cast<std::ptrdiff_t>(n), xs.end())));
             }),
        impl("takePrefix_identity", params, "List Int", "xs",
             [](const InputMap& in) { return ok(VLi(seq(in, "xs"))); }),
        impl("takePrefix_empty", params, "List Int", "[]",
             [](const InputMap&) { return ok(VLi({})); }),
        impl("takePrefix_replicate", params, "List Int", "List.replicate n 0",
             [](const InputMap& in) {
               std::int64_t n = sca(in, "n");
               if (n < 0 || static_cast<std::size_t>(n) > kMaxSynthesizedLength)
                 return runtime_fail("replicate size too large");
               return ok(VLi(std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)));
             }),
        impl("takePrefix_suffix", params, "List Int", "xs.drop (xs.length - n)",
             [](const InputMap& in) {
               const auto& xs = seq(in, "xs");
               std::size_t n = std::min(static_cast<std::size_t>(sca(in, "n")), xs.size());
               return ok(VLi(std::vector<std::int64_t>(xs.end() - static_cast<std::ptrdiff_t>(n),
                                                       xs.end())));
             }),
    };
    t.base_expected = {{{"xs", VLi({1, 2, 3})}, {"n", VN(2)}},
                       {{"xs", VLi({})}, {"n", VN(0)}},
                       {{"xs", VLi({5, 6})}, {"n", VN(0)}}};
    t.base_unexpected = {{{"xs", VLi({1})}, {"n", VN(5)}}, {{"xs", VLi({})}, {"n", VN(1)}}};
    t.mock_seed_inputs = {{{"xs", VLi({1, 2, 3})}, {"n", VN(3)}},
                          {{"xs", VLi({4})}, {"n", VN(0)}},
                          {{"xs", VLi({})}, {"n", VN(0)}},
                          {{"xs", VLi({1})}, {"n", VN(2)}},
                          {{"xs", VLi({9, 8, 7, 6})}, {"n", VN(2)}},
                          {{"xs", VLi({0, 0})}, {"n", VN(5)}}};
    t.mock_adversarial_blocks = {{0, 1, 2, 3, 4}};
    tasks.push_back(std::move(t));
  }

  return tasks;
}

std::map<std::string, ImplSpec> make_impl_table() {
  std::map<std::string, ImplSpec> table;
  for (const ToyTask& t : builtin_tasks()) {
    auto add = [&](const NamedImpl& ni) {
      DefHeader h = parse_def_header(ni.source);
      ParamSignature sig;
      for (const auto& [name, type] : h.params) {
        auto vt = type_from_name(type);
        if (!vt) throw UnknownType("builtin impl parameter type: " + type);
        sig.params.push_back({name, *vt});
      }
      table[impl_table_key(h.raw_params, h.return_type, h.body)] =
          ImplSpec{std::move(sig), *type_from_name(h.return_type), ni.fn};
    };
    add(t.reference);
    for (const NamedImpl& ni : t.adversarial) add(ni);
  }
  return table;
}

}  // namespace

const std::vector<ToyTask>& builtin_tasks() {
  static const std::vector<ToyTask> tasks = make_tasks();
  return tasks;
}

const ToyTask* find_builtin_task(const std::string& id) {
  for (const ToyTask& t : builtin_tasks())
    if (t.id == id) return &t;
  return nullptr;
}

const std::map<std::string, ClauseFn>& builtin_clause_table() {
  static const std::map<std::string, ClauseFn> table = make_clause_table();
  return table;
}

const std::map<std::string, ImplSpec>& builtin_impl_table() {
  static const std::map<std::string, ImplSpec> table = make_impl_table();
  return table;
}

std::string impl_table_key(const std::string& raw_params, const std::string& return_type,
                           const std::string& body) {
  return normalize_spaces(raw_params + " : " + return_type + " := " + body);
}

Task to_task(const ToyTask& toy) {
  Task task;
  task.id = toy.id;
  task.description = toy.description;
  task.signature = toy.signature;
  task.output_type = toy.output_type;
  task.precond_ref = toy.precond_name;
  task.postcond_ref = toy.postcond_name;
  task.reference_impl_ref = toy.impl_name;
  task.base_expected_inputs = toy.base_expected;
  task.base_unexpected_inputs = toy.base_unexpected;
  task.precond_text = toy.precond_text;
  task.postcond_text = toy.postcond_text;
  task.impl_signature = toy.impl_signature;
  return task;
}

std::string mock_seed_response(const ToyTask& toy) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const InputMap& input : toy.mock_seed_inputs) {
    nlohmann::ordered_json item;
    item["input"] = input_to_untyped_json(input, toy.signature);
    arr.push_back(std::move(item));
  }
  return arr.dump(2);
}

std::string mock_decomposition_response(const ToyTask& toy) {
  std::string params_line;
  for (const Param& p : toy.signature.params) {
    if (!params_line.empty()) params_line += ", ";
    params_line += p.name + " : " + std::string(type_name(p.type));
  }
  std::string precond_line = normalize_spaces(parse_def_header(toy.precond_text).body);
  std::string out;
  out += "Input:\n";
  out += "    a. " + params_line + "\n";
  out += "    b. constraints\n";
  out += "        - (E) " + precond_line + "\n";
  out += "Output:\n";
  out += "    a. res1 : " + std::string(type_name(toy.output_type)) + "\n";
  out += "    b. constraints\n";
  out += "        - res1 is the output required by the problem description\n";
  return out;
}

std::string mock_spec_response(const ToyTask& toy) {
  std::string out;
  out += "```lean\n";
  out += "-- Precondition Implementation\n";
  out += toy.candidate_precond_text + "\n\n";
  out += "-- Postcondition Implementation\n";
  out += toy.candidate_postcond_text + "\n";
  out += "```\n";
  return out;
}

std::vector<std::string> mock_adversarial_responses(const ToyTask& toy) {
  std::vector<std::string> responses;
  for (const std::vector<int>& plan : toy.mock_adversarial_blocks) {
    if (plan.empty()) {
      responses.push_back(
          "After careful analysis the given post-condition pins the output completely; "
          "I could not construct a degenerate implementation that satisfies it while "
          "producing wrong outputs.");
      continue;
    }
    std::string out = "```lean\n";
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const NamedImpl& ni = toy.adversarial.at(static_cast<std::size_t>(plan[i]));
      DefHeader h = parse_def_header(ni.source);
      if (i > 0) out += "\n";
      out += "-- Adversarial Implementation " + std::to_string(i + 1) + "\n";
      out += render_def(toy.impl_name + std::to_string(i + 1), h.raw_params, h.return_type,
                        h.body) +
             "\n";
    }
    out += "```\n";
    responses.push_back(std::move(out));
  }
  return responses;
}

std::vector<std::string> mock_llm_script(const ToyTask& toy, int seed_rounds) {
  std::vector<std::string> script;
  std::string seed = mock_seed_response(toy);
  for (int i = 0; i < seed_rounds; ++i) script.push_back(seed);
  script.push_back(mock_decomposition_response(toy));
  script.push_back(mock_spec_response(toy));
  for (std::string& r : mock_adversarial_responses(toy)) script.push_back(std::move(r));
  return script;
}

}  // namespace veriscale
