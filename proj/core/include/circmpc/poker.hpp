#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circmpc/arith.hpp"

namespace circmpc {

struct DealConfig {
  int r = 0;  // integers 1..r are dealt
  int N = 10;  // counter bound
  // Per-party quotas summing to r and differing by at most 1. Empty means a
  // public lottery picks the r mod k players who get one extra.
  std::vector<int> quotas;
};

struct DealResult {
  std::vector<std::vector<int>> hands;  // per party, sorted
  std::vector<int> quotas;
  int starter = 0;  // party that injected integer 0
  int zero_keeper = -1;
  // Filled by deal_deck: permutation[i - 1] is the deck position assigned to
  // integer i, and labels mirror hands.
  std::vector<int> permutation;
  std::vector<std::vector<std::string>> labels;
};

// Random disjoint distribution of 1..r over a secure cycle. The starter and
// the quota lottery come from public collective draws; every other choice is
// a private counter. Transcript meta records r, k, N, quotas and starter.
Outcome<DealResult> protocol1_distribute(const DealConfig& cfg, const ChannelGraph& g,
                                         RandomnessProvider& rng, const RunOptions& opts = {});

// Receiver and the two contributors of one collective draw.
struct DrawRoles {
  int receiver;
  int first;
  int second;
};

// Contributors each send a uniform value mod M; the receiver adds them.
Outcome<Int> protocol2_random3(const Int& M, DrawRoles roles, const ChannelGraph& g,
                               RandomnessProvider& rng, const RunOptions& opts = {});

// 1-based i on a k-cycle: receiver P_{i+1}, contributors P_i and P_{i+2}
// (indices mod k, along cycle order).
DrawRoles protocol2_roles(int i, const std::vector<int>& order);
Outcome<Int> protocol2_random_k(const Int& M, int i, const ChannelGraph& g,
                                RandomnessProvider& rng, const RunOptions& opts = {});

struct ShuffleResult {
  std::vector<int> permutation;  // arrangement of 1..m
  std::vector<std::pair<int, int>> swaps;  // (i, j), 1-based positions
};

// For i = 1..m-1 swap position i with a position drawn uniformly from i..m by
// a collective draw modulo m-i+1.
Outcome<ShuffleResult> knuth_shuffle(int m, const ChannelGraph& g, RandomnessProvider& rng,
                                     const RunOptions& opts = {});
std::vector<int> apply_swaps(int m, const std::vector<std::pair<int, int>>& swaps);

// Standard deck names ("AS", "10H", ...) for m <= 52, "card<n>" beyond.
std::vector<std::string> deck_labels(int m);

// Protocol 1 over 1..m followed by a public shuffle that labels the integers.
Outcome<DealResult> deal_deck(int m, int N, const ChannelGraph& g, RandomnessProvider& rng,
                              const RunOptions& opts = {});

// Maps c1 + c2 mod N into 1..N (residue 0 becomes N).
int combine_counter(int c1, int c2, int N);

struct TwoPlayerDeal {
  DealResult deal;  // party 2 is the dummy; its hand is in `discarded`
  std::vector<int> discarded;
};

// Three-seat deal where seat 3 is a dummy: its counters are combined from the
// two real players' contributions and its cards go back to the deck.
Outcome<TwoPlayerDeal> dummy_deal_two_players(int m, int N, RandomnessProvider& rng,
                                              const RunOptions& opts = {});

struct DealerTable {
  int real_players = 0;
  int dummies = 0;
  int dealer = 0;  // party index of the dummy dealer
  int N = 10;
  ChannelGraph graph;
  std::vector<std::vector<int>> hands;  // real players only
  std::vector<int> residual;  // held by the dealer, sorted
};

// round(m / s) - k clamped to >= 1.
int dealer_dummy_count(int m, int k, int s);

// k real players on a cycle followed by d contiguous dummies. Each real player
// receives exactly s cards, the dummies absorb the rest and pass their cards
// along the dummy chain to the dealer (the first dummy).
Outcome<DealerTable> dummy_dealer_fixed_hands(int m, int k, int s, int N,
                                              std::optional<int> dummies,
                                              RandomnessProvider& rng,
                                              const RunOptions& opts = {});

// Serves n uniformly random residual cards to a real player.
Outcome<std::vector<int>> dealer_draw(DealerTable& table, int player, int n,
                                      RandomnessProvider& rng);

// sum_{j=1..N} j^k / N^k
Rational expected_circles(int N, int k);

}  // namespace circmpc
