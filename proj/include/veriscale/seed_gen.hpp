#pragma once

#include <string>
#include <vector>

#include "veriscale/llm_client.hpp"
#include "veriscale/prompts.hpp"
#include "veriscale/rng.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// Knobs for the LLM seeding round(s). The valid/invalid split is a target
// communicated to the generator, not an enforced quota; by default 40% of
// the requested candidates are asked to be likely-invalid.
struct SeedGenConfig {
  int rounds = 1;
  int candidates_per_round = 40;
  int example_limit = 5;
  int invalid_target = 16;  // = ceil(0.4 * candidates_per_round)
  int valid_target = 24;

  static SeedGenConfig with_candidates(int candidates_per_round, int rounds = 1,
                                       int example_limit = 5);
  void validate() const;  // throws ConfigError on violated invariants
};

// Instantiates the seed prompt template for one task.
// Throws MissingPrecondText when the task carries no precondition source.
PromptPair render_seed_prompt(const Task& task, const SeedGenConfig& cfg);

// Strictly parses `[{"input": {...}}, ...]` out of a model response.
// Prose or fences around the array are tolerated; items that are not
// exactly an {"input": <well-typed binding>} object are dropped one by one
// (reasons appended to drop_log when given). Throws NoJsonArray when no
// JSON array can be located at all.
std::vector<InputMap> parse_seed_response(const std::string& text,
                                          const ParamSignature& signature,
                                          std::vector<std::string>* drop_log = nullptr);

// Base inputs plus `rounds` render→complete→parse cycles, deduplicated by
// canonical key with first occurrence kept. Output is never smaller than
// the task's base input set. Client failures rethrow as ClientError tagged
// with the round index.
std::vector<InputMap> generate_seeds(const Task& task, LlmClient& client,
                                     const SeedGenConfig& cfg, Rng& rng);

}  // namespace veriscale
