#pragma once

#include <cstdint>
#include <limits>

namespace veriscale {

// Integer arithmetic over the value domain saturates at the int64 range
// instead of wrapping; mutated candidates can otherwise double their way
// into undefined behaviour.
inline std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  __int128 r = static_cast<__int128>(a) + b;
  if (r > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
  if (r < std::numeric_limits<std::int64_t>::min()) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(r);
}

inline std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
  if (r < std::numeric_limits<std::int64_t>::min()) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(r);
}

inline std::int64_t saturating_sub(std::int64_t a, std::int64_t b) {
  __int128 r = static_cast<__int128>(a) - b;
  if (r > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
  if (r < std::numeric_limits<std::int64_t>::min()) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(r);
}

// Natural-number clip: negative results collapse to zero.
inline std::int64_t clip_to_nat(std::int64_t z) { return z < 0 ? 0 : z; }

}  // namespace veriscale
