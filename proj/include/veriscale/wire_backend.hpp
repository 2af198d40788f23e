#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "veriscale/backend.hpp"

namespace veriscale {

// Transport knobs shared by both wire transports.
struct WireConfig {
  // Budget for probes that carry no explicit timeout (check/register).
  int io_timeout_ms = 30000;
  // Slack granted beyond a probe's own timeout before the transport gives
  // up and (for subprocess transports) kills the worker.
  int timeout_margin_ms = 2000;
};

// Talks the newline-delimited JSON probe protocol to a prover/executor
// worker process: one request object per line, one reply object per line.
//
//   {"probe":"check","source":...}
//   {"probe":"decide","expr":...,"negated":bool,"timeout_ms":N}
//   {"probe":"plausible","expr":...,"negated":bool,"unfold":...,"timeout_ms":N}
//   {"probe":"run","impl":...,"input":{tagged bindings},"timeout_ms":N}
//   {"probe":"register","ref":...,"source":...}
//
// Replies: {"result":"pass"|"fail"|"counterexample"|"timeout"|"value"|
// "runtime_failure", "detail":..., "value":<tagged value>}.
//
// A worker that exceeds its reply budget is killed and respawned on the
// next request; the stuck probe reports Timeout. Protocol violations raise
// BackendUnavailable (verifier probes) or ExecutorUnavailable (run).
// Thread-safe: requests are serialized over the single worker.
class SubprocessBackend : public VerifierBackend, public Executor, public ImplRegistry {
 public:
  explicit SubprocessBackend(std::vector<std::string> command, WireConfig cfg = {});
  ~SubprocessBackend() override;

  ProbeOutcome check_syntax(const std::string& source) override;
  ProbeOutcome guard_decide(const std::string& expr, bool negated, int timeout_ms) override;
  ProbeOutcome plausible_probe(const std::string& expr, bool negated,
                               const std::string& unfold_name, int timeout_ms) override;
  RunOutcome run(const std::string& impl_ref, const InputMap& input, int timeout_ms) override;
  ProbeOutcome register_impl(const std::string& ref, const std::string& source) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Same protocol over HTTP: each probe POSTs its request object to the
// endpoint and reads the reply object from the response body.
class HttpBackend : public VerifierBackend, public Executor, public ImplRegistry {
 public:
  explicit HttpBackend(std::string endpoint, WireConfig cfg = {});
  ~HttpBackend() override;

  ProbeOutcome check_syntax(const std::string& source) override;
  ProbeOutcome guard_decide(const std::string& expr, bool negated, int timeout_ms) override;
  ProbeOutcome plausible_probe(const std::string& expr, bool negated,
                               const std::string& unfold_name, int timeout_ms) override;
  RunOutcome run(const std::string& impl_ref, const InputMap& input, int timeout_ms) override;
  ProbeOutcome register_impl(const std::string& ref, const std::string& source) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace veriscale
