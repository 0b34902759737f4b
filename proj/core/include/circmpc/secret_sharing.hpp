#pragma once

#include <optional>
#include <span>
#include <vector>

#include "circmpc/arith.hpp"

namespace circmpc {

// Players 0..k-1 on a secure cycle plus a dealer (party k) with a secure link
// to every player: 2k channels.
ChannelGraph build_sharing_graph(int k);

// The initiator sends M - m_i onward, every other player subtracts its own
// random m_j and keeps m_j, and the initiator adds m_i to what comes back.
// Returns the summands by party index (players of the cycle only).
Outcome<std::vector<Int>> distribute_shares_subroutine(const Ring& ring, const Int& M,
                                                       int initiator, const ChannelGraph& g,
                                                       RandomnessProvider& rng,
                                                       const RunOptions& opts = {});

// (k, k) sharing: the dealer splits N at random, hands n_i to P_i, and P_i
// spreads n_i with the subroutine. Player j's share is the sum of the k
// summands it received. No one, the dealer included, learns another's share.
Outcome<std::vector<Int>> share_secret_kk(const Ring& ring, const Int& secret,
                                          const ChannelGraph& g, RandomnessProvider& rng,
                                          const RunOptions& opts = {});

// Every share is required; a missing one is an error.
Int reconstruct(const Ring& ring, std::span<const std::optional<Int>> shares);

}  // namespace circmpc
