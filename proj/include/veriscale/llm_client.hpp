#pragma once

#include <deque>
#include <memory>
#include <string>
#include <vector>

namespace veriscale {

// Text-completion transport. Request and response bodies are opaque to the
// pipeline beyond the text-in/text-out contract; implementations throw
// ClientError on transport failure.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const std::string& system, const std::string& user) = 0;
};

// Deterministic stand-in used by tests and `--mock` runs: scripted
// responses are consumed in call order; once exhausted, every call returns
// "[]" (an empty candidate array). Prompts are recorded for inspection.
class MockLlm : public LlmClient {
 public:
  MockLlm() = default;
  explicit MockLlm(std::vector<std::string> responses)
      : responses_(responses.begin(), responses.end()) {}

  std::string complete(const std::string& system, const std::string& user) override;

  void push_response(std::string text) { responses_.push_back(std::move(text)); }
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& transcript() const {
    return transcript_;
  }

 private:
  std::deque<std::string> responses_;
  std::vector<std::pair<std::string, std::string>> transcript_;
};

// POSTs {"model", "system", "user"} as JSON to `endpoint` and expects
// {"text": "..."} back. When auth_env names an environment variable, its
// value is sent as a bearer token.
class HttpLlmClient : public LlmClient {
 public:
  HttpLlmClient(std::string endpoint, std::string model, std::string auth_env = {},
                int timeout_ms = 60000);
  ~HttpLlmClient() override;
  std::string complete(const std::string& system, const std::string& user) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Spawns `command` once per call, writes the request as one JSON line
// {"model", "system", "user"} on stdin, and reads a JSON object with a
// "text" field from stdout.
class SubprocessLlmClient : public LlmClient {
 public:
  explicit SubprocessLlmClient(std::vector<std::string> command, std::string model = {});
  std::string complete(const std::string& system, const std::string& user) override;

 private:
  std::vector<std::string> command_;
  std::string model_;
};

}  // namespace veriscale
