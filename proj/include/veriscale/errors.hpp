#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace veriscale {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- value grammar / schema errors ----

// Malformed literal text.
struct SyntaxError : Error {
  using Error::Error;
};

// Literal parses but violates the expected type's domain (e.g. negative Nat).
struct TypeMismatch : Error {
  using Error::Error;
};

// Task/suite document violates the on-disk schema. `pointer` is a JSON
// pointer to the offending location.
struct SchemaError : Error {
  SchemaError(std::string ptr, const std::string& message)
      : Error(ptr + ": " + message), pointer(std::move(ptr)) {}
  std::string pointer;
};

// Declared parameter type is outside the supported set.
struct UnknownType : Error {
  using Error::Error;
};

// ---- mutation / seed generation ----

struct EmptySeedSet : Error {
  using Error::Error;
};

// No JSON array could be located in an LLM response.
struct NoJsonArray : Error {
  using Error::Error;
};

// LLM transport failure, annotated with the generation round.
struct ClientError : Error {
  using Error::Error;
};

// Task lacks the precondition source text a prompt template needs.
struct MissingPrecondText : Error {
  using Error::Error;
};

// A prompt template slot has no content to substitute.
struct MissingSlot : Error {
  using Error::Error;
};

// ---- classification / execution ----

// Both polarities of a probe succeeded; the backend contradicts itself.
struct BackendInconsistency : Error {
  using Error::Error;
};

struct BackendUnavailable : Error {
  using Error::Error;
};

struct ExecutorUnavailable : Error {
  using Error::Error;
};

// One failed classification, recorded by classify_all.
struct BackendFailure {
  std::size_t index = 0;
  std::string input_key;
  std::string message;
};

struct AggregateBackendError : Error {
  explicit AggregateBackendError(std::vector<BackendFailure> f)
      : Error(format(f)), failures(std::move(f)) {}
  std::vector<BackendFailure> failures;

 private:
  static std::string format(const std::vector<BackendFailure>& f) {
    std::string msg = std::to_string(f.size()) + " backend error(s)";
    for (const auto& e : f) {
      msg += "\n  [" + std::to_string(e.index) + "] " + e.input_key + ": " + e.message;
    }
    return msg;
  }
};

// ---- adversarial stage ----

// Ground-truth postcondition is not a top-level conjunction.
struct NotConjunctive : Error {
  using Error::Error;
};

// Adversarial response carried no recognizable implementation blocks.
struct NoBlocksFound : Error {
  using Error::Error;
};

// ---- harness ----

struct EmptySuiteSet : Error {
  using Error::Error;
};

// Bad CLI/pipeline configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace veriscale
