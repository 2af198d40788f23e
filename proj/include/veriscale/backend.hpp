#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "veriscale/value.hpp"

namespace veriscale {

enum class ProbeStatus { Pass, Fail, Counterexample, Timeout };

// Result of one prover probe. `detail` carries the backend's message
// (compile error, counterexample text, ...) for transcripts and logs.
struct ProbeOutcome {
  ProbeStatus status = ProbeStatus::Fail;
  std::string detail;
};

inline const char* probe_status_name(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Pass: return "pass";
    case ProbeStatus::Fail: return "fail";
    case ProbeStatus::Counterexample: return "counterexample";
    case ProbeStatus::Timeout: return "timeout";
  }
  return "fail";
}

// Proof-assistant facade. Expressions are fully applied Prop terms over
// literal arguments ("pre_sort ([1, 2])"); definitions are full `def`
// source blocks. Implementations must be safe to call from worker threads.
class VerifierBackend {
 public:
  virtual ~VerifierBackend() = default;

  // Elaborate-only check (`#check e` / whole-def compile). Pass = well-typed.
  virtual ProbeOutcome check_syntax(const std::string& source) = 0;

  // Kernel-reduced decidability probe (`#guard decide e`, negated form wraps
  // the expression in ¬ (...)). Pass = the guard reduced to true.
  virtual ProbeOutcome guard_decide(const std::string& expr, bool negated, int timeout_ms) = 0;

  // Property-based falsification (`plausible` after unfold/simp). A found
  // counterexample refutes `expr`; Fail = exhausted without one.
  virtual ProbeOutcome plausible_probe(const std::string& expr, bool negated,
                                       const std::string& unfold_name, int timeout_ms) = 0;
};

enum class RunStatus { Value, RuntimeFailure, Timeout };

struct RunOutcome {
  RunStatus status = RunStatus::RuntimeFailure;
  std::optional<Value> value;  // set iff status == Value
  std::string detail;
};

// Executes a named compiled implementation on one input binding.
class Executor {
 public:
  virtual ~Executor() = default;
  virtual RunOutcome run(const std::string& impl_ref, const InputMap& input, int timeout_ms) = 0;
};

// Compiles a full `def` source block and binds its executable form under the
// caller-chosen ref. check_syntax only validates; red-teamed implementations
// from different prompts may reuse def names, so the orchestrator assigns
// collision-free refs at registration time.
class ImplRegistry {
 public:
  virtual ~ImplRegistry() = default;
  virtual ProbeOutcome register_impl(const std::string& ref, const std::string& source) = 0;
};

// Memoizes runs per (impl_ref, canonical input). Kill-matrix construction
// replays the same implementation over the same inputs many times; the
// cache makes that one execution each.
class CachingExecutor : public Executor {
 public:
  explicit CachingExecutor(Executor& inner) : inner_(inner) {}

  RunOutcome run(const std::string& impl_ref, const InputMap& input, int timeout_ms) override {
    std::string key = impl_ref + '\x1f' + canonical_key(input);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        ++hits_;
        return it->second;
      }
    }
    RunOutcome out = inner_.run(impl_ref, input, timeout_ms);
    std::lock_guard<std::mutex> lock(mutex_);
    ++misses_;
    cache_.emplace(std::move(key), out);
    return out;
  }

  [[nodiscard]] size_t hits() const { return hits_; }
  [[nodiscard]] size_t misses() const { return misses_; }

 private:
  Executor& inner_;
  std::map<std::string, RunOutcome> cache_;
  std::mutex mutex_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

}  // namespace veriscale
