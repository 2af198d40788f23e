#include "veriscale/mutation.hpp"

#include <algorithm>
#include <unordered_set>

#include "veriscale/errors.hpp"
#include "veriscale/numeric.hpp"

namespace veriscale {

namespace {

// Scalar schemas shared by Int/Nat and by element modification inside
// numeric sequences. schema is 1 (shift) or 2 (scale).
std::int64_t apply_scalar_schema(int schema, std::int64_t x, std::int64_t delta) {
  return schema == 1 ? saturating_add(x, delta) : saturating_mul(delta, x);
}

Value mutate_scalar(const Value& x, Rng& rng, MutationTrace* trace) {
  const int schema = 1 + static_cast<int>(rng.below(2));
  const std::int64_t delta = rng.range_inclusive(-2, 2);
  std::int64_t z = apply_scalar_schema(schema, x.as_int(), delta);
  if (trace) trace->schema_index = schema;
  if (x.type() == ValueType::Nat) return Value::make_nat(clip_to_nat(z));
  return Value::make_int(z);
}

Value mutate_numeric_sequence(const Value& x, Rng& rng, MutationTrace* trace) {
  const bool nat = is_nat_family(x.type());
  const int schema = 1 + static_cast<int>(rng.below(4));
  if (trace) trace->schema_index = schema;
  std::vector<std::int64_t> xs = x.as_ints();
  switch (schema) {
    case 1:  // element modification; identity on the empty sequence
      if (!xs.empty()) {
        const auto j = rng.below(xs.size());
        const int inner = 1 + static_cast<int>(rng.below(2));
        const std::int64_t delta = rng.range_inclusive(-2, 2);
        std::int64_t z = apply_scalar_schema(inner, xs[j], delta);
        xs[j] = nat ? clip_to_nat(z) : z;
      }
      break;
    case 2: {  // append
      const std::int64_t v = rng.range_inclusive(-5, 5);
      xs.push_back(nat ? clip_to_nat(v) : v);
      break;
    }
    case 3:  // delete; identity on the empty sequence
      if (!xs.empty()) {
        const auto j = rng.below(xs.size());
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(j));
      }
      break;
    default:  // reverse
      std::reverse(xs.begin(), xs.end());
      break;
  }
  return Value::make_sequence(x.type(), std::move(xs));
}

Value mutate_char_list(const Value& x, Rng& rng, MutationTrace* trace) {
  const std::string& alphabet = mutation_alphabet();
  const int schema = 1 + static_cast<int>(rng.below(4));
  if (trace) trace->schema_index = schema;
  std::string cs = x.as_chars();
  switch (schema) {
    case 1:  // replace element; identity on the empty sequence
      if (!cs.empty()) {
        const auto j = rng.below(cs.size());
        cs[j] = alphabet[rng.below(alphabet.size())];
      }
      break;
    case 2:  // append
      cs += alphabet[rng.below(alphabet.size())];
      break;
    case 3:  // delete; identity on the empty sequence
      if (!cs.empty()) {
        const auto j = rng.below(cs.size());
        cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(j));
      }
      break;
    default:  // reverse
      std::reverse(cs.begin(), cs.end());
      break;
  }
  return Value::make_chars(ValueType::ListChar, std::move(cs));
}

Value mutate_string(const Value& x, Rng& rng, MutationTrace* trace) {
  const int schema = 1 + static_cast<int>(rng.below(3));
  if (trace) trace->schema_index = schema;
  switch (schema) {
    case 1:  // collapse to the empty string
      return Value::make_chars(ValueType::String, "");
    case 2: {  // reverse
      std::string cs = x.as_chars();
      std::reverse(cs.begin(), cs.end());
      return Value::make_chars(ValueType::String, std::move(cs));
    }
    default: {  // append a special character
      const std::string& alphabet = special_alphabet();
      std::string cs = x.as_chars();
      cs += alphabet[rng.below(alphabet.size())];
      return Value::make_chars(ValueType::String, std::move(cs));
    }
  }
}

}  // namespace

IngredientPool build_ingredient_pool(std::span<const InputMap> candidates) {
  IngredientPool pool;
  for (const auto& candidate : candidates) {
    for (const auto& [name, value] : candidate) pool.add(value);
  }
  return pool;
}

Value mutate_value(const Value& x, const IngredientPool& pool, const MutationConfig& cfg, Rng& rng,
                   MutationTrace* trace) {
  if (trace) *trace = {};
  // The reuse roll happens unconditionally so that draw sequences stay
  // aligned whether or not the pool is populated.
  const bool reuse = rng.chance(cfg.ingredient_prob);
  if (reuse) {
    if (const auto* bucket = pool.bucket(x.type())) {
      if (trace) trace->reused = true;
      return (*bucket)[rng.below(bucket->size())];
    }
    // Empty bucket: fall through to the uniform schema path.
  }
  switch (x.type()) {
    case ValueType::Int:
    case ValueType::Nat:
      return mutate_scalar(x, rng, trace);
    case ValueType::ListChar:
      return mutate_char_list(x, rng, trace);
    case ValueType::String:
      return mutate_string(x, rng, trace);
    default:
      return mutate_numeric_sequence(x, rng, trace);
  }
}

InputMap mutate_input(const InputMap& input, const IngredientPool& pool, const MutationConfig& cfg,
                      Rng& rng) {
  if (input.empty()) return input;
  InputMap out = input;
  std::vector<InputMap::iterator> slots;
  slots.reserve(out.size());
  for (auto it = out.begin(); it != out.end(); ++it) slots.push_back(it);

  const int steps = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                            std::max(1, cfg.multi_step_size))));
  for (int s = 0; s < steps; ++s) {
    auto& slot = slots[rng.below(slots.size())];
    slot->second = mutate_value(slot->second, pool, cfg, rng);
  }
  return out;
}

std::vector<InputMap> expand_candidates(std::span<const InputMap> seeds, const MutationConfig& cfg,
                                        Rng& rng) {
  if (seeds.empty()) throw EmptySeedSet("expand_candidates requires at least one seed input");

  // Collapse duplicate seeds, first occurrence wins.
  std::vector<InputMap> unique_seeds;
  std::unordered_set<std::string> seen;
  for (const auto& seed : seeds) {
    if (seen.insert(canonical_key(seed)).second) unique_seeds.push_back(seed);
  }

  // The pool reflects the full candidate set before mutation begins.
  const IngredientPool pool = build_ingredient_pool(unique_seeds);

  std::vector<InputMap> out;
  for (std::size_t i = 0; i < unique_seeds.size(); ++i) {
    Rng stream = rng.split(i);
    for (int draw = 0; draw < cfg.max_mutations_per_input; ++draw) {
      InputMap candidate = mutate_input(unique_seeds[i], pool, cfg, stream);
      if (seen.insert(canonical_key(candidate)).second) out.push_back(std::move(candidate));
    }
  }
  return out;
}

}  // namespace veriscale
