#pragma once

#include <cstdint>
#include <random>

namespace regtor {

/// Integer in [lo, hi] from one draw of the engine. Implemented by hand so
/// seeded sequences are identical across standard library implementations.
inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

}  // namespace regtor
