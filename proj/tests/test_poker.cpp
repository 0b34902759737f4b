#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "circmpc/arith.hpp"
#include "circmpc/errors.hpp"
#include "circmpc/poker.hpp"
#include "support.hpp"

using namespace circmpc;
using circmpc::testing::script;

namespace {

template <class T>
std::vector<int> sizes(const std::vector<std::vector<T>>& hands) {
  std::vector<int> out;
  for (const auto& h : hands) out.push_back(static_cast<int>(h.size()));
  return out;
}

void expect_partition(const std::vector<std::vector<int>>& hands, int r) {
  std::vector<int> all;
  for (const auto& h : hands) all.insert(all.end(), h.begin(), h.end());
  std::sort(all.begin(), all.end());
  std::vector<int> want(static_cast<std::size_t>(r));
  std::iota(want.begin(), want.end(), 1);
  EXPECT_EQ(all, want);
}

}  // namespace

TEST(Protocol1, SixIntegersTwoEach) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SeededRandomness rng(seed);
    auto d = protocol1_distribute({6, 2, {}}, build_cycle(3), rng).result;
    EXPECT_EQ(sizes(d.hands), (std::vector<int>{2, 2, 2}));
    expect_partition(d.hands, 6);
    EXPECT_GE(d.zero_keeper, 0);
  }
}

TEST(Protocol1, FiftyTwoIntegers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SeededRandomness rng(seed);
    auto d = protocol1_distribute({52, 10, {}}, build_cycle(3), rng).result;
    auto s = sizes(d.hands);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(s, (std::vector<int>{17, 17, 18}));
    expect_partition(d.hands, 52);
    EXPECT_EQ(sizes(d.hands), d.quotas);
  }
}

TEST(Protocol1, FixedQuotas) {
  SeededRandomness rng(3);
  auto d = protocol1_distribute({7, 3, {3, 2, 2}}, build_cycle(3), rng).result;
  EXPECT_EQ(sizes(d.hands), (std::vector<int>{3, 2, 2}));
  EXPECT_THROW(protocol1_distribute({7, 3, {4, 2, 1}}, build_cycle(3), rng), ProtocolError);
  EXPECT_THROW(protocol1_distribute({7, 3, {3, 3}}, build_cycle(3), rng), ProtocolError);
}

TEST(Protocol1, OnlyIntegersTravelOnTheCycle) {
  SeededRandomness rng(8);
  auto out = protocol1_distribute({9, 4, {}}, build_cycle(4), rng);
  const auto circ = *out.transcript.phase_start("circulate");
  for (const auto& m : out.transcript.messages) {
    if (m.seq < circ) continue;
    EXPECT_EQ(m.label, "int");
    EXPECT_EQ(m.to, (m.from + 1) % 4);
  }
}

TEST(Protocol1, SingleIntegerHandSimulation) {
  // r = 1, N = 1: every counter is 1, so 0 is kept on its second pass by the
  // player after the starter (4 hops) and 1 then goes round twice more until
  // that player sees it for the second time (6 hops).
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRandomness rng(seed);
    auto out = protocol1_distribute({1, 1, {}}, build_cycle(3), rng);
    std::vector<int> payloads;
    for (const auto& m : out.transcript.messages) {
      if (m.label == "int") payloads.push_back(static_cast<int>(m.value));
    }
    EXPECT_EQ(payloads, (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(out.result.zero_keeper, (out.result.starter + 1) % 3);
  }
}

TEST(Protocol2, ModularAddition) {
  auto rng = script({{1, {3}}, {2, {4}}});
  // i = 3: P3 and P2 contribute, P1 receives.
  auto out = protocol2_random_k(5, 3, build_cycle(3), rng);
  EXPECT_EQ(out.result, 2);
  EXPECT_EQ(out.transcript.messages.back().to, 0);
}

TEST(Protocol2, TrivialModulus) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRandomness rng(seed);
    EXPECT_EQ(protocol2_random_k(1, 1, build_cycle(3), rng).result, 0);
  }
}

TEST(Protocol2, Roles) {
  auto r3 = protocol2_roles(1, {0, 1, 2});
  EXPECT_EQ(r3.receiver, 1);
  EXPECT_EQ(std::set<int>({r3.first, r3.second}), std::set<int>({0, 2}));
  auto r5 = protocol2_roles(5, {0, 1, 2, 3, 4});
  EXPECT_EQ(r5.receiver, 0);
  EXPECT_EQ(std::set<int>({r5.first, r5.second}), std::set<int>({4, 1}));
}

TEST(Protocol2, MaskedByEitherContributor) {
  // With one contributor fixed, the output is uniform over Z_M because the
  // other contributor's draw is.
  for (int M = 2; M <= 7; ++M) {
    for (int fixed = 0; fixed < M; ++fixed) {
      std::map<Int, Rational> dist;
      ExhaustiveRandomness rng;
      do {
        rng.begin_run();
        ScriptedRandomness pinned(std::map<int, std::deque<Int>>{{0, {Int(fixed)}}});
        // Party 0 contributes first for i = 1 on a 3-cycle.
        struct Mixed : RandomnessProvider {
          RandomnessProvider* fixed_src;
          RandomnessProvider* free_src;
          Int draw(int party, const Int& lo, const Int& hi) override {
            return party == 0 ? fixed_src->draw(party, lo, hi) : free_src->draw(party, lo, hi);
          }
        } mixed;
        mixed.fixed_src = &pinned;
        mixed.free_src = &rng;
        const Int v = protocol2_random_k(M, 1, build_cycle(3), mixed).result;
        dist[v] += rng.weight();
      } while (rng.advance());
      ASSERT_EQ(dist.size(), static_cast<std::size_t>(M));
      for (const auto& [v, p] : dist) EXPECT_EQ(p, Rational(1, M)) << "M=" << M << " v=" << v;
    }
  }
}

TEST(Shuffle, SingleCard) {
  SeededRandomness rng(1);
  auto out = knuth_shuffle(1, build_cycle(3), rng).result;
  EXPECT_EQ(out.permutation, (std::vector<int>{1}));
  EXPECT_TRUE(out.swaps.empty());
}

TEST(Shuffle, SwapListReplays) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SeededRandomness rng(seed);
    auto out = knuth_shuffle(10, build_cycle(4), rng).result;
    EXPECT_EQ(apply_swaps(10, out.swaps), out.permutation);
    for (const auto& [i, j] : out.swaps) {
      EXPECT_GE(j, i);
      EXPECT_LE(j, 10);
    }
  }
}

TEST(Deck, Labels) {
  const auto labels = deck_labels(52);
  EXPECT_EQ(std::set<std::string>(labels.begin(), labels.end()).size(), 52U);
  EXPECT_EQ(labels.front(), "AS");
  EXPECT_EQ(labels.back(), "KC");
  EXPECT_EQ(deck_labels(53).back(), "card53");
}

TEST(Deck, FullDeal) {
  SeededRandomness rng(5);
  auto d = deal_deck(52, 10, build_cycle(3), rng).result;
  auto s = sizes(d.labels);
  std::sort(s.begin(), s.end());
  EXPECT_EQ(s, (std::vector<int>{17, 17, 18}));
  std::set<std::string> seen;
  for (const auto& hand : d.labels) seen.insert(hand.begin(), hand.end());
  const auto all = deck_labels(52);
  EXPECT_EQ(seen, std::set<std::string>(all.begin(), all.end()));
}

TEST(Deck, ThreeCards) {
  SeededRandomness rng(5);
  auto d = deal_deck(3, 10, build_cycle(3), rng).result;
  EXPECT_EQ(sizes(d.labels), (std::vector<int>{1, 1, 1}));
}

TEST(DummyCounter, Combination) {
  EXPECT_EQ(combine_counter(2, 3, 4), 1);
  EXPECT_EQ(combine_counter(2, 2, 4), 4);
  EXPECT_EQ(combine_counter(0, 0, 1), 1);
  // Uniform over 1..N when either part is.
  for (int N = 1; N <= 6; ++N) {
    for (int c1 = 0; c1 < N; ++c1) {
      std::set<int> hit;
      for (int c2 = 0; c2 < N; ++c2) hit.insert(combine_counter(c1, c2, N));
      EXPECT_EQ(hit.size(), static_cast<std::size_t>(N));
      EXPECT_EQ(*hit.begin(), 1);
      EXPECT_EQ(*hit.rbegin(), N);
    }
  }
}

TEST(DummyDeal, CountersSynthesizedFromShares) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SeededRandomness rng(seed);
    auto out = dummy_deal_two_players(6, 4, rng);
    const auto& t = out.transcript;
    std::vector<Int> shares;
    for (const auto& m : t.messages) {
      if (m.label == "counter-share") {
        EXPECT_EQ(m.to, 2);
        shares.push_back(m.value);
      }
    }
    std::vector<Int> counters;
    for (const auto& e : t.events) {
      if (e.party == 2 && e.label == "c") counters.push_back(e.value);
    }
    ASSERT_EQ(shares.size(), 2 * counters.size());
    for (std::size_t i = 0; i < counters.size(); ++i) {
      const int want = combine_counter(static_cast<int>(shares[2 * i] % 4),
                                       static_cast<int>(shares[2 * i + 1] % 4), 4);
      EXPECT_EQ(counters[i], want);
    }
    EXPECT_EQ(t.draws[2], 0U);

    std::vector<std::vector<int>> all{out.result.deal.hands[0], out.result.deal.hands[1],
                                      out.result.discarded};
    expect_partition(all, 6);
    EXPECT_EQ(sizes(all), (std::vector<int>{2, 2, 2}));
  }
}

TEST(Dealer, DummyCount) {
  EXPECT_EQ(dealer_dummy_count(52, 2, 17), 1);
  EXPECT_EQ(dealer_dummy_count(6, 2, 2), 1);
  EXPECT_EQ(dealer_dummy_count(52, 3, 5), 7);
  EXPECT_EQ(dealer_dummy_count(10, 4, 2), 1);
}

TEST(Dealer, FixedHands) {
  SeededRandomness rng(2);
  auto t = dummy_dealer_fixed_hands(52, 2, 17, 10, std::nullopt, rng).result;
  EXPECT_EQ(t.dummies, 1);
  EXPECT_EQ(sizes(t.hands), (std::vector<int>{17, 17}));
  EXPECT_EQ(t.residual.size(), 18U);
  auto all = t.hands;
  all.push_back(t.residual);
  expect_partition(all, 52);
}

TEST(Dealer, SeveralDummiesConsolidate) {
  SeededRandomness rng(4);
  auto out = dummy_dealer_fixed_hands(20, 3, 4, 5, 3, rng);
  EXPECT_EQ(sizes(out.result.hands), (std::vector<int>{4, 4, 4}));
  EXPECT_EQ(out.result.residual.size(), 8U);
  for (std::size_t p = 3; p < out.transcript.draws.size(); ++p) EXPECT_EQ(out.transcript.draws[p], 0U);
}

TEST(Dealer, SmallExactDivision) {
  SeededRandomness rng(5);
  auto t = dummy_dealer_fixed_hands(6, 2, 2, 4, std::nullopt, rng).result;
  EXPECT_EQ(sizes(t.hands), (std::vector<int>{2, 2}));
  EXPECT_EQ(t.residual.size(), 2U);
}

TEST(Dealer, DrawServesFromResidual) {
  SeededRandomness rng(6);
  auto t = dummy_dealer_fixed_hands(12, 2, 3, 4, std::nullopt, rng).result;
  const auto before = t.residual;
  auto served = dealer_draw(t, 1, 1, rng).result;
  ASSERT_EQ(served.size(), 1U);
  EXPECT_EQ(t.residual.size(), before.size() - 1);
  EXPECT_TRUE(std::binary_search(before.begin(), before.end(), served[0]));
  EXPECT_FALSE(std::binary_search(t.residual.begin(), t.residual.end(), served[0]));
  EXPECT_EQ(t.hands[1].size(), 4U);
  EXPECT_THROW(dealer_draw(t, 2, 1, rng), ProtocolError);
  EXPECT_THROW(dealer_draw(t, 0, 100, rng), ProtocolError);
}

TEST(Dealer, Infeasible) {
  SeededRandomness rng(1);
  EXPECT_THROW(dummy_dealer_fixed_hands(10, 3, 4, 4, std::nullopt, rng), ProtocolError);
}

TEST(Circles, Formula) {
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(expected_circles(1, k), 1);
  EXPECT_EQ(expected_circles(2, 2), Rational(5, 4));
  EXPECT_EQ(expected_circles(10, 3), Rational(3025, 1000));
  // Sum of cubes identity.
  for (int N = 1; N <= 20; ++N) {
    const Int tri = Int(N) * (N + 1) / 2;
    EXPECT_EQ(expected_circles(N, 3), Rational(tri * tri, Int(N) * N * N));
  }
}
