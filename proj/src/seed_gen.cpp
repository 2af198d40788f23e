#include "veriscale/seed_gen.hpp"

#include <set>

#include "json.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/json_io.hpp"

namespace veriscale {

using nlohmann::json;
using nlohmann::ordered_json;

SeedGenConfig SeedGenConfig::with_candidates(int candidates_per_round, int rounds,
                                             int example_limit) {
  SeedGenConfig cfg;
  cfg.rounds = rounds;
  cfg.candidates_per_round = candidates_per_round;
  cfg.example_limit = example_limit;
  cfg.invalid_target = (candidates_per_round * 4 + 9) / 10;  // ceil(0.4 * n)
  cfg.valid_target = candidates_per_round - cfg.invalid_target;
  cfg.validate();
  return cfg;
}

void SeedGenConfig::validate() const {
  if (rounds < 0 || candidates_per_round < 0 || example_limit < 0 || invalid_target < 0 ||
      valid_target < 0)
    throw ConfigError("seed generation counts must be non-negative");
  if (invalid_target + valid_target != candidates_per_round)
    throw ConfigError("invalid_target + valid_target must equal candidates_per_round (" +
                      std::to_string(invalid_target) + " + " + std::to_string(valid_target) +
                      " != " + std::to_string(candidates_per_round) + ")");
}

namespace {

std::string render_examples(const std::vector<InputMap>& inputs, int limit) {
  ordered_json arr = ordered_json::array();
  // Examples need the signature's key order; the stored InputMaps were
  // loaded against the signature, so replay their own key order via the
  // untyped rendering of each binding.
  int taken = 0;
  for (const auto& input : inputs) {
    if (taken >= limit) break;
    ordered_json obj = ordered_json::object();
    for (const auto& [name, value] : input) obj[name] = value_to_untyped_json(value);
    arr.push_back(std::move(obj));
    ++taken;
  }
  return arr.empty() ? "[]" : arr.dump(2);
}

std::string render_parameters(const ParamSignature& signature) {
  ordered_json obj = ordered_json::object();
  for (const auto& param : signature.params) obj[param.name] = type_name(param.type);
  return obj.dump(2);
}

// Finds the first substring that parses as a JSON array, honoring string
// escapes while bracket matching.
std::optional<json> locate_json_array(const std::string& text) {
  for (size_t start = 0; start < text.size(); ++start) {
    if (text[start] != '[') continue;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (escaped)
          escaped = false;
        else if (c == '\\')
          escaped = true;
        else if (c == '"')
          in_string = false;
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '[' || c == '{') {
        ++depth;
      } else if (c == ']' || c == '}') {
        --depth;
        if (depth == 0) {
          json parsed = json::parse(text.substr(start, i - start + 1), nullptr, false);
          if (!parsed.is_discarded() && parsed.is_array()) return parsed;
          break;  // malformed span — resume scanning after this '['
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PromptPair render_seed_prompt(const Task& task, const SeedGenConfig& cfg) {
  cfg.validate();
  if (task.precond_text.empty())
    throw MissingPrecondText("task '" + task.id + "' has no precondition source text");
  std::string user = render_template(
      prompts::seed_user_template(),
      {
          {"description", task.description},
          {"precond", task.precond_text},
          {"candidate_count", std::to_string(cfg.candidates_per_round)},
          {"invalid_target", std::to_string(cfg.invalid_target)},
          {"valid_target", std::to_string(cfg.valid_target)},
          {"parameters", render_parameters(task.signature)},
          {"test_examples", render_examples(task.base_expected_inputs, cfg.example_limit)},
          {"reject_examples", render_examples(task.base_unexpected_inputs, cfg.example_limit)},
      },
      /*unescape_braces=*/true);
  return PromptPair{prompts::seed_system(), std::move(user)};
}

std::vector<InputMap> parse_seed_response(const std::string& text,
                                          const ParamSignature& signature,
                                          std::vector<std::string>* drop_log) {
  auto array = locate_json_array(text);
  if (!array) throw NoJsonArray("response contains no parseable JSON array");

  auto drop = [&](size_t index, const std::string& reason) {
    if (drop_log != nullptr)
      drop_log->push_back("item " + std::to_string(index) + ": " + reason);
  };

  std::vector<InputMap> inputs;
  for (size_t i = 0; i < array->size(); ++i) {
    const json& item = (*array)[i];
    if (!item.is_object()) {
      drop(i, "not a JSON object");
      continue;
    }
    if (item.size() != 1 || !item.contains("input")) {
      drop(i, "expected exactly one key \"input\"");
      continue;
    }
    const json& binding = item["input"];
    if (!binding.is_object()) {
      drop(i, "\"input\" is not a JSON object");
      continue;
    }
    try {
      inputs.push_back(input_from_untyped_json(binding, signature, "/" + std::to_string(i)));
    } catch (const Error& e) {
      drop(i, e.what());
    }
  }
  return inputs;
}

std::vector<InputMap> generate_seeds(const Task& task, LlmClient& client,
                                     const SeedGenConfig& cfg, Rng& rng) {
  (void)rng;  // seeding is LLM-driven; the stream is reserved for future sampling knobs
  cfg.validate();

  std::vector<InputMap> merged;
  std::set<std::string> seen;
  auto add = [&](const InputMap& input) {
    if (seen.insert(canonical_key(input)).second) merged.push_back(input);
  };

  for (const auto& input : task.base_expected_inputs) add(input);
  for (const auto& input : task.base_unexpected_inputs) add(input);

  PromptPair prompt = render_seed_prompt(task, cfg);
  for (int round = 0; round < cfg.rounds; ++round) {
    std::string response;
    try {
      response = client.complete(prompt.system.value_or(""), prompt.user);
    } catch (const ClientError& e) {
      throw ClientError("seed round " + std::to_string(round + 1) + ": " + e.what());
    }
    try {
      for (const auto& input : parse_seed_response(response, task.signature)) add(input);
    } catch (const NoJsonArray& e) {
      throw NoJsonArray("seed round " + std::to_string(round + 1) + ": " + e.what());
    }
  }
  return merged;
}

}  // namespace veriscale
