#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "circmpc/ring.hpp"

namespace circmpc {

// Supplies every party's private randomness for one run. The engine routes
// each draw through here tagged with the drawing party.
class RandomnessProvider {
 public:
  virtual ~RandomnessProvider() = default;
  virtual Int draw(int party, const Int& lo, const Int& hi) = 0;
};

// Uniform draw in [lo, hi] from a 64-bit generator by rejection over
// ceil(bits/64) words. Portable across standard libraries.
Int uniform_from(std::mt19937_64& gen, const Int& lo, const Int& hi);

// One generator per party, forked from the run seed by party index.
class SeededRandomness : public RandomnessProvider {
 public:
  explicit SeededRandomness(std::uint64_t seed) : seed_(seed) {}

  Int draw(int party, const Int& lo, const Int& hi) override;
  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64& generator(int party);

  std::uint64_t seed_;
  std::map<int, std::mt19937_64> generators_;
};

// Replays per-party queues of predetermined values; used to pin hand-traced
// examples. Parties without a script fall back to a seeded generator when one
// is supplied, otherwise exhausting the script is an error.
class ScriptedRandomness : public RandomnessProvider {
 public:
  explicit ScriptedRandomness(std::map<int, std::deque<Int>> script,
                              std::optional<std::uint64_t> fallback_seed = std::nullopt);

  Int draw(int party, const Int& lo, const Int& hi) override;
  bool exhausted() const;

 private:
  std::map<int, std::deque<Int>> script_;
  std::unique_ptr<SeededRandomness> fallback_;
};

// Depth-first odometer over every sequence of draws a run can make. Call
// begin_run() before each execution and advance() after it; each completed
// path carries probability weight() = prod 1/|range|.
class ExhaustiveRandomness : public RandomnessProvider {
 public:
  explicit ExhaustiveRandomness(std::uint64_t max_range = 1U << 20) : max_range_(max_range) {}

  Int draw(int party, const Int& lo, const Int& hi) override;

  void begin_run() { depth_ = 0; }
  // Moves to the next unexplored path; false once every path has been run.
  bool advance();
  Rational weight() const;
  std::size_t depth() const { return depth_; }

 private:
  struct Choice {
    std::uint64_t index;
    std::uint64_t size;
  };

  std::uint64_t max_range_;
  std::vector<Choice> stack_;
  std::size_t depth_ = 0;
};

}  // namespace circmpc
