#include "veriscale/wire_backend.hpp"

#include "httplib.h"
#include "json.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/json_io.hpp"
#include "veriscale/subprocess.hpp"

namespace veriscale {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json check_request(const std::string& source) {
  return {{"probe", "check"}, {"source", source}};
}

ordered_json decide_request(const std::string& expr, bool negated, int timeout_ms) {
  return {{"probe", "decide"}, {"expr", expr}, {"negated", negated}, {"timeout_ms", timeout_ms}};
}

ordered_json plausible_request(const std::string& expr, bool negated, const std::string& unfold,
                               int timeout_ms) {
  return {{"probe", "plausible"},
          {"expr", expr},
          {"negated", negated},
          {"unfold", unfold},
          {"timeout_ms", timeout_ms}};
}

ordered_json run_request(const std::string& impl_ref, const InputMap& input, int timeout_ms) {
  return {{"probe", "run"},
          {"impl", impl_ref},
          {"input", input_to_json(input)},
          {"timeout_ms", timeout_ms}};
}

ordered_json register_request(const std::string& ref, const std::string& source) {
  return {{"probe", "register"}, {"ref", ref}, {"source", source}};
}

// Decodes a probe reply. Throws `Unavailable` (BackendUnavailable or
// ExecutorUnavailable) on protocol violations.
template <typename Unavailable>
json parse_reply(const std::string& text) {
  json reply = json::parse(text, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("result") ||
      !reply["result"].is_string())
    throw Unavailable("malformed backend reply: " + text);
  return reply;
}

ProbeOutcome reply_to_probe(const json& reply) {
  std::string result = reply["result"].get<std::string>();
  std::string detail = reply.value("detail", "");
  if (result == "pass") return {ProbeStatus::Pass, detail};
  if (result == "fail") return {ProbeStatus::Fail, detail};
  if (result == "counterexample") return {ProbeStatus::Counterexample, detail};
  if (result == "timeout") return {ProbeStatus::Timeout, detail};
  throw BackendUnavailable("unexpected probe result: " + result);
}

RunOutcome reply_to_run(const json& reply) {
  std::string result = reply["result"].get<std::string>();
  std::string detail = reply.value("detail", "");
  if (result == "value") {
    if (!reply.contains("value"))
      throw ExecutorUnavailable("run reply carries no value field");
    return {RunStatus::Value, value_from_json(reply["value"], "/value"), detail};
  }
  if (result == "runtime_failure") return {RunStatus::RuntimeFailure, std::nullopt, detail};
  if (result == "timeout") return {RunStatus::Timeout, std::nullopt, detail};
  throw ExecutorUnavailable("unexpected run result: " + result);
}

}  // namespace

// ---- subprocess transport ----

struct SubprocessBackend::Impl {
  LineProcess proc;
  WireConfig cfg;
  std::mutex mutex;

  Impl(std::vector<std::string> command, WireConfig c) : proc(std::move(command)), cfg(c) {}

  // nullopt = the worker blew its reply budget (it has been killed).
  template <typename Unavailable>
  std::optional<json> exchange(const ordered_json& request, int budget_ms) {
    std::lock_guard<std::mutex> lock(mutex);
    std::optional<std::string> reply;
    try {
      reply = proc.exchange(request.dump(), budget_ms);
    } catch (const ClientError& e) {
      throw Unavailable(std::string("worker unavailable: ") + e.what());
    }
    if (!reply) return std::nullopt;
    return parse_reply<Unavailable>(*reply);
  }
};

SubprocessBackend::SubprocessBackend(std::vector<std::string> command, WireConfig cfg)
    : impl_(std::make_unique<Impl>(std::move(command), cfg)) {}

SubprocessBackend::~SubprocessBackend() = default;

ProbeOutcome SubprocessBackend::check_syntax(const std::string& source) {
  auto reply = impl_->exchange<BackendUnavailable>(check_request(source), impl_->cfg.io_timeout_ms);
  if (!reply) return {ProbeStatus::Timeout, "syntax check timed out"};
  return reply_to_probe(*reply);
}

ProbeOutcome SubprocessBackend::guard_decide(const std::string& expr, bool negated,
                                             int timeout_ms) {
  auto reply = impl_->exchange<BackendUnavailable>(decide_request(expr, negated, timeout_ms),
                                                   timeout_ms + impl_->cfg.timeout_margin_ms);
  if (!reply) return {ProbeStatus::Timeout, "decide probe timed out"};
  return reply_to_probe(*reply);
}

ProbeOutcome SubprocessBackend::plausible_probe(const std::string& expr, bool negated,
                                                const std::string& unfold_name, int timeout_ms) {
  auto reply =
      impl_->exchange<BackendUnavailable>(plausible_request(expr, negated, unfold_name, timeout_ms),
                                          timeout_ms + impl_->cfg.timeout_margin_ms);
  if (!reply) return {ProbeStatus::Timeout, "plausible probe timed out"};
  return reply_to_probe(*reply);
}

RunOutcome SubprocessBackend::run(const std::string& impl_ref, const InputMap& input,
                                  int timeout_ms) {
  auto reply = impl_->exchange<ExecutorUnavailable>(run_request(impl_ref, input, timeout_ms),
                                                    timeout_ms + impl_->cfg.timeout_margin_ms);
  if (!reply) return {RunStatus::Timeout, std::nullopt, "execution timed out"};
  return reply_to_run(*reply);
}

ProbeOutcome SubprocessBackend::register_impl(const std::string& ref, const std::string& source) {
  auto reply =
      impl_->exchange<BackendUnavailable>(register_request(ref, source), impl_->cfg.io_timeout_ms);
  if (!reply) return {ProbeStatus::Timeout, "registration timed out"};
  return reply_to_probe(*reply);
}

// ---- HTTP transport ----

namespace {

// "http://host:port/path" -> {"http://host:port", "/path"}
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme = endpoint.find("://");
  if (scheme == std::string::npos)
    throw BackendUnavailable("endpoint must carry a scheme: " + endpoint);
  auto path = endpoint.find('/', scheme + 3);
  if (path == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path), endpoint.substr(path)};
}

}  // namespace

struct HttpBackend::Impl {
  std::string origin;
  std::string path;
  WireConfig cfg;

  Impl(const std::string& endpoint, WireConfig c) : cfg(c) {
    std::tie(origin, path) = split_endpoint(endpoint);
  }

  template <typename Unavailable>
  json post(const ordered_json& request, int budget_ms) {
    httplib::Client client(origin);
    client.set_connection_timeout(budget_ms / 1000, (budget_ms % 1000) * 1000);
    client.set_read_timeout(budget_ms / 1000, (budget_ms % 1000) * 1000);
    auto res = client.Post(path, request.dump(), "application/json");
    if (!res)
      throw Unavailable("backend endpoint unreachable: " + origin +
                        " (" + httplib::to_string(res.error()) + ")");
    if (res->status != 200)
      throw Unavailable("backend endpoint returned HTTP " + std::to_string(res->status));
    return parse_reply<Unavailable>(res->body);
  }
};

HttpBackend::HttpBackend(std::string endpoint, WireConfig cfg)
    : impl_(std::make_unique<Impl>(endpoint, cfg)) {}

HttpBackend::~HttpBackend() = default;

ProbeOutcome HttpBackend::check_syntax(const std::string& source) {
  return reply_to_probe(
      impl_->post<BackendUnavailable>(check_request(source), impl_->cfg.io_timeout_ms));
}

ProbeOutcome HttpBackend::guard_decide(const std::string& expr, bool negated, int timeout_ms) {
  return reply_to_probe(impl_->post<BackendUnavailable>(
      decide_request(expr, negated, timeout_ms), timeout_ms + impl_->cfg.timeout_margin_ms));
}

ProbeOutcome HttpBackend::plausible_probe(const std::string& expr, bool negated,
                                          const std::string& unfold_name, int timeout_ms) {
  return reply_to_probe(
      impl_->post<BackendUnavailable>(plausible_request(expr, negated, unfold_name, timeout_ms),
                                      timeout_ms + impl_->cfg.timeout_margin_ms));
}

RunOutcome HttpBackend::run(const std::string& impl_ref, const InputMap& input, int timeout_ms) {
  return reply_to_run(impl_->post<ExecutorUnavailable>(
      run_request(impl_ref, input, timeout_ms), timeout_ms + impl_->cfg.timeout_margin_ms));
}

ProbeOutcome HttpBackend::register_impl(const std::string& ref, const std::string& source) {
  return reply_to_probe(
      impl_->post<BackendUnavailable>(register_request(ref, source), impl_->cfg.io_timeout_ms));
}

}  // namespace veriscale
