#pragma once

#include <span>
#include <string>
#include <vector>

#include "circmpc/engine.hpp"

namespace circmpc::detail {

inline Session open_session(const std::string& name, const ChannelGraph& g,
                            RandomnessProvider& rng, const RunOptions& opts,
                            std::vector<Capability> default_roster = {}) {
  Session s(name, g, opts.roster.empty() ? std::move(default_roster) : opts.roster, rng);
  if (opts.tamper) s.set_tamper(opts.tamper);
  return s;
}

inline void check_inputs(const Ring& ring, std::span<const Int> inputs, std::size_t expected) {
  if (inputs.size() != expected) {
    throw ProtocolError("expected " + std::to_string(expected) + " inputs, got " +
                        std::to_string(inputs.size()));
  }
  for (const auto& x : inputs) {
    if (!ring.contains(x)) {
      throw RingError("input " + to_string(x) + " is not an element of " + ring.spec().to_string());
    }
  }
}

inline void record_ring(Session& s, const Ring& ring) {
  s.set_meta("ring", ring.spec().to_string());
}

}  // namespace circmpc::detail
