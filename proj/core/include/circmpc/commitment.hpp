#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "circmpc/arith.hpp"

namespace circmpc {

enum class SplitMode { Bit, Integer };

// committed = r + s in the ring.
struct CommitSplit {
  Int r;
  Int s;
  Int committed;
};

// r uniform over Z_m, s = n - r. Bit mode is the m = 2 case with n in {0, 1}.
CommitSplit split_value(const Int& n, const Int& m, SplitMode mode, RandomSource& rng);

enum class CommitPhase { Committed, Revealed };

std::string to_string(CommitPhase phase);

// What each party holds once the commit phase is over. `held` is the party's
// inventory keyed by role label ("r1", "s2+s3", ...); `own` is its committed
// value.
struct CommitmentLedger {
  RingSpec ring;
  ChannelGraph graph;
  std::vector<int> order;  // party indices playing P1, P2, P3 (or A, B, D)
  std::vector<Int> own;
  std::vector<std::map<std::string, Int>> held;
  CommitPhase phase = CommitPhase::Committed;

  const Int& at(int role, const std::string& label) const;
};

struct CommitResult {
  CommitmentLedger ledger;
  Transcript transcript;
};

// Every party's reconstruction of the committed tuple, indexed by role.
struct RevealResult {
  std::vector<std::vector<Int>> recovered;
  Transcript transcript;
};

// Three-party commitment on a secure 3-cycle. Inventories afterwards:
//   P1 {s1, s2+s3, r1, r1+r2+r3}
//   P2 {s2, s3, r1, r2}
//   P3 {s3, r3, r1+r2, s1+s2+s3}
CommitResult commit3(const Ring& ring, const Int& n1, const Int& n2, const Int& n3,
                     const ChannelGraph& g, RandomnessProvider& rng, const RunOptions& opts = {});

// Reveal: P3 sends n1+n2 to P1 and P2, P2 sends r1 to P3, P1 sends s2+s3 to
// P3 and r1+r2+r3 to P2. Each party then sends the two values it recovered to
// both others; a receiver that finds its own value or its own reconstruction
// contradicted throws CheatDetected. Moves the ledger to Revealed.
RevealResult decommit3(CommitmentLedger& ledger, RandomnessProvider& rng,
                       const RunOptions& opts = {});

// k-party commitment on a secure k-cycle, k >= 3. Prefix sums r1+...+ri travel
// forward (Pi -> Pi+1, Pk -> P1) and suffix sums si+...+sk travel backward
// (Pi -> Pi-1, P1 -> Pk). Pi holds ri, si, the prefix it received and the
// suffix it received. Experimental: hiding and binding are tested for small k
// only.
CommitResult commitk(const Ring& ring, std::span<const Int> inputs, const ChannelGraph& g,
                     RandomnessProvider& rng, const RunOptions& opts = {});

// Every party broadcasts each partial sum it sent or received during commit.
// Each partial sum has two holders, its sender and its receiver, who check the
// other's broadcast against their own copy. Everyone then rebuilds
// ri = Ri - Ri-1 and si = Si - Si+1 and so every n_i.
RevealResult decommitk(CommitmentLedger& ledger, RandomnessProvider& rng,
                       const RunOptions& opts = {});

// Two-party commitment through a dummy D (roles A = 0, B = 1, D = 2).
// Inventories: A {r1, s1, r2}, B {r2, s2, s1}, D {r1+r2, s1+s2}.
CommitResult commit2_dummy(const Ring& ring, const Int& n1, const Int& n2, const ChannelGraph& g,
                           RandomnessProvider& rng, const RunOptions& opts = {});

// D reveals n1+n2 to A and B; A and B confirm each other's value. Recovered
// rows for A and B hold (n1, n2); D's row stays empty.
RevealResult decommit2_dummy(CommitmentLedger& ledger, RandomnessProvider& rng,
                             const RunOptions& opts = {});

// A splits every message m_i = r_i + s_i, gives all r_i to D and all s_i to B
// (setup). B sends D the wanted 1-based indices and gets the matching r_j.
// A receives nothing after setup.
Outcome<std::vector<Int>> ot_dummy(const Ring& ring, std::span<const Int> messages,
                                   std::span<const int> indices, const ChannelGraph& g,
                                   RandomnessProvider& rng, const RunOptions& opts = {});

}  // namespace circmpc
