#include "circmpc/randomness.hpp"

#include <string>

namespace circmpc {

Int uniform_from(std::mt19937_64& gen, const Int& lo, const Int& hi) {
  if (hi < lo) throw ProtocolError("empty sampling range");
  const Int span = hi - lo + 1;
  if (span == 1) return lo;
  const std::size_t bits = bit_length(span - 1);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  for (;;) {
    Int candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = gen();
      if (w == 0) word &= top_mask;
      candidate = (candidate << 64) | Int(word);
    }
    if (candidate < span) return lo + candidate;
  }
}

std::mt19937_64& SeededRandomness::generator(int party) {
  auto it = generators_.find(party);
  if (it == generators_.end()) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(party), 0x63697263U};
    it = generators_.emplace(party, std::mt19937_64(seq)).first;
  }
  return it->second;
}

Int SeededRandomness::draw(int party, const Int& lo, const Int& hi) {
  return uniform_from(generator(party), lo, hi);
}

ScriptedRandomness::ScriptedRandomness(std::map<int, std::deque<Int>> script,
                                       std::optional<std::uint64_t> fallback_seed)
    : script_(std::move(script)) {
  if (fallback_seed) fallback_ = std::make_unique<SeededRandomness>(*fallback_seed);
}

Int ScriptedRandomness::draw(int party, const Int& lo, const Int& hi) {
  auto it = script_.find(party);
  if (it == script_.end() || it->second.empty()) {
    if (fallback_) return fallback_->draw(party, lo, hi);
    throw ProtocolError("no scripted value left for P" + std::to_string(party + 1));
  }
  Int value = it->second.front();
  it->second.pop_front();
  if (value < lo || value > hi) {
    throw ProtocolError("scripted value " + to_string(value) + " outside [" + to_string(lo) +
                        ", " + to_string(hi) + "]");
  }
  return value;
}

bool ScriptedRandomness::exhausted() const {
  for (const auto& [party, queue] : script_) {
    if (!queue.empty()) return false;
  }
  return true;
}

Int ExhaustiveRandomness::draw(int /*party*/, const Int& lo, const Int& hi) {
  if (hi < lo) throw ProtocolError("empty sampling range");
  const Int span = hi - lo + 1;
  if (span > max_range_) {
    throw BudgetExceeded("draw range " + to_string(span) + " too large to enumerate");
  }
  const auto size = static_cast<std::uint64_t>(span);
  if (depth_ == stack_.size()) {
    stack_.push_back({0, size});
  } else if (stack_[depth_].size != size) {
    throw ProtocolError("non-deterministic draw structure during enumeration");
  }
  return lo + Int(stack_[depth_++].index);
}

bool ExhaustiveRandomness::advance() {
  // Paths that were not fully consumed this run belong to a different branch.
  stack_.resize(depth_);
  while (!stack_.empty()) {
    auto& top = stack_.back();
    if (top.index + 1 < top.size) {
      ++top.index;
      return true;
    }
    stack_.pop_back();
  }
  return false;
}

Rational ExhaustiveRandomness::weight() const {
  Int denom = 1;
  for (std::size_t i = 0; i < depth_; ++i) denom *= stack_[i].size;
  return Rational(Int(1), denom);
}

}  // namespace circmpc
