#pragma once

// Reproducible random streams.  Every Monte Carlo run is split into fixed-size
// blocks; block b draws from mt19937_64 seeded with splitmix64(seed, b), so
// results do not depend on how blocks are spread over threads.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

namespace hciz {

using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64/splitmix64-substreams";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t mixed = splitmix64(splitmix64(seed) ^ splitmix64(stream + 0xD1B54A32D192ED03ULL));
  return Rng(mixed);
}

// HCIZ_THREADS if set and positive, otherwise the hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("HCIZ_THREADS"); env != nullptr) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace hciz
