#include "veriscale/llm_client.hpp"

#include <cstdlib>

#include "json.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/subprocess.hpp"

#include "httplib.h"

namespace veriscale {

std::string MockLlm::complete(const std::string& system, const std::string& user) {
  transcript_.emplace_back(system, user);
  if (responses_.empty()) return "[]";
  std::string text = std::move(responses_.front());
  responses_.pop_front();
  return text;
}

struct HttpLlmClient::Impl {
  std::string scheme_host;
  std::string path;
  std::string model;
  std::string token;
  int timeout_ms;
};

namespace {

// Split "http://host:port/path" into origin + path for httplib.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw ClientError("endpoint must start with http:// or https://: " + endpoint);
  auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

HttpLlmClient::HttpLlmClient(std::string endpoint, std::string model, std::string auth_env,
                             int timeout_ms)
    : impl_(new Impl) {
  auto [origin, path] = split_endpoint(endpoint);
  impl_->scheme_host = origin;
  impl_->path = path;
  impl_->model = std::move(model);
  impl_->timeout_ms = timeout_ms;
  if (!auth_env.empty()) {
    const char* tok = std::getenv(auth_env.c_str());
    if (tok != nullptr) impl_->token = tok;
  }
}

HttpLlmClient::~HttpLlmClient() = default;

std::string HttpLlmClient::complete(const std::string& system, const std::string& user) {
  httplib::Client client(impl_->scheme_host);
  client.set_connection_timeout(impl_->timeout_ms / 1000, (impl_->timeout_ms % 1000) * 1000);
  client.set_read_timeout(impl_->timeout_ms / 1000, (impl_->timeout_ms % 1000) * 1000);
  if (!impl_->token.empty()) client.set_bearer_token_auth(impl_->token);

  nlohmann::json body{{"model", impl_->model}, {"system", system}, {"user", user}};
  auto res = client.Post(impl_->path, body.dump(), "application/json");
  if (!res) throw ClientError("completion request failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw ClientError("completion endpoint returned HTTP " + std::to_string(res->status));
  nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") ||
      !reply["text"].is_string())
    throw ClientError("completion reply is not a JSON object with a \"text\" string");
  return reply["text"].get<std::string>();
}

SubprocessLlmClient::SubprocessLlmClient(std::vector<std::string> command, std::string model)
    : command_(std::move(command)), model_(std::move(model)) {
  if (command_.empty()) throw ClientError("empty completion command");
}

std::string SubprocessLlmClient::complete(const std::string& system, const std::string& user) {
  nlohmann::json request{{"model", model_}, {"system", system}, {"user", user}};
  std::string raw = run_capture(command_, request.dump());
  nlohmann::json reply = nlohmann::json::parse(raw, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") ||
      !reply["text"].is_string())
    throw ClientError("completion reply is not a JSON object with a \"text\" string");
  return reply["text"].get<std::string>();
}

}  // namespace veriscale
