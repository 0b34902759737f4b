#pragma once

#include <map>
#include <random>

#include "circmpc/randomness.hpp"
#include "circmpc/ring.hpp"

namespace circmpc::testing {

struct MtSource : RandomSource {
  explicit MtSource(std::uint64_t seed) : gen(seed) {}
  Int uniform(const Int& lo, const Int& hi) override { return uniform_from(gen, lo, hi); }
  std::mt19937_64 gen;
};

// Script of per-party draws; anything unlisted falls back to a seeded stream.
inline ScriptedRandomness script(std::map<int, std::deque<Int>> draws) {
  return ScriptedRandomness(std::move(draws), 99);
}

inline Int sum_mod(const std::vector<Int>& xs, const Ring& ring) {
  Int acc = 0;
  for (const auto& x : xs) acc += x;
  return ring.reduce(acc);
}

}  // namespace circmpc::testing
