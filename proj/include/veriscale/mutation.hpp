#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "veriscale/rng.hpp"
#include "veriscale/value.hpp"

namespace veriscale {

// Knobs for the mutation stage.
struct MutationConfig {
  // Upper limit of mutation samples drawn per seed input.
  int max_mutations_per_input = 15;
  // Each sample applies k schema steps, k ~ uniform{1..multi_step_size}.
  int multi_step_size = 5;
  // Probability of replacing a value wholesale with one drawn from the
  // ingredient pool instead of applying a schema.
  double ingredient_prob = 0.3;
  std::uint64_t rng_seed = 0;
};

// Per-type multiset of values harvested from the current candidate set.
// Buckets are keyed by exact ValueType, so Nat values never leak into Int
// positions and lists never stand in for arrays.
class IngredientPool {
 public:
  void add(const Value& v) { buckets_[v.type()].push_back(v); }

  // nullptr when the pool has no values of this exact type.
  [[nodiscard]] const std::vector<Value>* bucket(ValueType t) const {
    auto it = buckets_.find(t);
    return it == buckets_.end() || it->second.empty() ? nullptr : &it->second;
  }

  [[nodiscard]] std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& [t, b] : buckets_) n += b.size();
    return n;
  }

 private:
  std::map<ValueType, std::vector<Value>> buckets_;
};

// Pool over every binding of every candidate input.
[[nodiscard]] IngredientPool build_ingredient_pool(std::span<const InputMap> candidates);

// What a single mutate_value draw did; used by distribution tests and logs.
struct MutationTrace {
  bool reused = false;    // value replaced wholesale from the pool
  int schema_index = 0;   // 1-based schema position for the value's type; 0 when reused
};

// Draws one mutation of x:
//   - with probability cfg.ingredient_prob, and a non-empty pool bucket of
//     x's exact type, returns a uniformly drawn pool value (wholesale
//     replacement); an empty bucket falls through to the schemas;
//   - otherwise picks a schema uniformly for x's type, then draws its
//     parameters uniformly.
// Schemas per type (fresh Nat-family elements are clipped at zero):
//   Int/Nat       1: x + d            d in {-2..2}
//                 2: d * x            d in {-2..2}
//   numeric seqs  1: replace element j with a scalar-schema mutation of it
//                 2: append v         v in {-5..5}
//                 3: delete element j
//                 4: reverse
//   List Char    1: replace element j with c in the mutation alphabet
//                 2: append c
//                 3: delete element j
//                 4: reverse
//   String        1: empty string
//                 2: reverse
//                 3: append c from the special-character alphabet
// Index-dependent schemas act as the identity on empty sequences. The
// result always has x's type.
[[nodiscard]] Value mutate_value(const Value& x, const IngredientPool& pool,
                                 const MutationConfig& cfg, Rng& rng,
                                 MutationTrace* trace = nullptr);

// Applies k ~ uniform{1..multi_step_size} sequential steps; each step picks
// one parameter uniformly and mutates its value in place.
[[nodiscard]] InputMap mutate_input(const InputMap& input, const IngredientPool& pool,
                                    const MutationConfig& cfg, Rng& rng);

// Expands a seed set: deduplicates the seeds (first occurrence wins),
// builds the ingredient pool from the deduplicated set, then draws up to
// cfg.max_mutations_per_input samples per seed, dropping anything already
// seen. Returns only the new candidates, in generation order. Each seed
// index gets its own RNG stream split from `rng`, so the output is
// independent of evaluation order. Throws EmptySeedSet when seeds is empty.
[[nodiscard]] std::vector<InputMap> expand_candidates(std::span<const InputMap> seeds,
                                                      const MutationConfig& cfg, Rng& rng);

}  // namespace veriscale
