#include <gtest/gtest.h>

#include <set>

#include "circmpc/analysis.hpp"
#include "circmpc/arith.hpp"
#include "circmpc/errors.hpp"
#include "circmpc/poker.hpp"

using namespace circmpc;

namespace {

SecrecySpec commit3_spec(int observer, std::vector<int> prot, Given given = Given::None) {
  SecrecySpec spec;
  spec.protocol = "commit3";
  spec.ring = RingSpec::modular(2);
  spec.observer = {ObserverKind::Party, {observer}};
  spec.protected_inputs = std::move(prot);
  spec.given = given;
  return spec;
}

// For every coalition view, the set of outsider input vectors consistent with
// it; a subset's parity is learnable iff it is constant on every such set.
std::set<std::vector<int>> brute_force_learnable(int k, const std::vector<int>& coalition) {
  const Ring z2(RingSpec::modular(2));
  std::vector<int> outsiders;
  for (int p = 0; p < k; ++p) {
    if (std::find(coalition.begin(), coalition.end(), p) == coalition.end()) outsiders.push_back(p);
  }
  std::map<std::string, std::set<std::vector<int>>> consistent;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<Int> in(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) in[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    std::vector<int> hidden;
    for (int p : outsiders) hidden.push_back((mask >> p) & 1);
    ExhaustiveRandomness rng;
    do {
      rng.begin_run();
      auto o = secure_sum(z2, in, build_cycle(k), rng);
      consistent[coalition_view(o.transcript, coalition).key()].insert(hidden);
    } while (rng.advance());
  }
  std::set<std::vector<int>> learnable;
  for (int s = 1; s < (1 << outsiders.size()); ++s) {
    bool fixed = true;
    for (const auto& [view, candidates] : consistent) {
      std::set<int> parities;
      for (const auto& h : candidates) {
        int par = 0;
        for (std::size_t b = 0; b < outsiders.size(); ++b) {
          if ((s >> b) & 1) par ^= h[b];
        }
        parities.insert(par);
      }
      fixed = fixed && parities.size() == 1;
    }
    if (!fixed) continue;
    std::vector<int> subset;
    for (std::size_t b = 0; b < outsiders.size(); ++b) {
      if ((s >> b) & 1) subset.push_back(outsiders[b]);
    }
    learnable.insert(subset);
  }
  return learnable;
}

}  // namespace

TEST(Independence, DetectsDependence) {
  IndependenceCheck check;
  check.add("c", "a", "v1", Rational(1, 2));
  check.add("c", "a", "v2", Rational(1, 2));
  check.add("c", "b", "v1", Rational(1, 2));
  check.add("c", "b", "v2", Rational(1, 2));
  EXPECT_FALSE(check.find_counterexample());
  check.add("d", "a", "v1", 1);
  check.add("d", "b", "v2", 1);
  const auto ce = check.find_counterexample();
  ASSERT_TRUE(ce);
  EXPECT_EQ(ce->condition, "d");
}

TEST(Independence, NormalizesPerAssignment) {
  IndependenceCheck check;
  check.add("c", "a", "v", 1);
  check.add("c", "b", "v", Rational(1, 3));
  EXPECT_FALSE(check.find_counterexample());
}

TEST(Determination, Basic) {
  DeterminationCheck d;
  d.add("v", "1");
  d.add("v", "1");
  EXPECT_TRUE(d.determined());
  d.add("v", "0");
  EXPECT_FALSE(d.determined());
}

TEST(Enumeration, WeightsSumToOne) {
  Rational total = 0;
  const auto runs = for_each_randomness(
      [&](ExhaustiveRandomness& rng) {
        rng.draw(0, 0, 2);
        rng.draw(1, 0, 1);
        total += rng.weight();
      },
      100);
  EXPECT_EQ(runs, 6U);
  EXPECT_EQ(total, 1);
  EXPECT_THROW(for_each_randomness([](ExhaustiveRandomness& rng) { rng.draw(0, 0, 9); }, 5),
               BudgetExceeded);
}

TEST(Secrecy, Commit3MiddleParty) {
  const auto r = secrecy_enumeration_check(commit3_spec(1, {0, 2}));
  EXPECT_TRUE(r.pass) << r.claim;
  EXPECT_EQ(r.runs, 64U);
}

TEST(Secrecy, Commit3FirstPartyLearnsPairSum) {
  const auto bare = secrecy_enumeration_check(commit3_spec(0, {1, 2}));
  EXPECT_FALSE(bare.pass);
  ASSERT_TRUE(bare.counterexample);
  EXPECT_NE(bare.counterexample->p_first, bare.counterexample->p_second);
  EXPECT_TRUE(secrecy_enumeration_check(commit3_spec(0, {1, 2}, Given::Sum)).pass);
}

TEST(Secrecy, SumMiddleParty) {
  SecrecySpec spec;
  spec.protocol = "sum";
  spec.ring = RingSpec::modular(2);
  spec.k = 3;
  spec.observer = {ObserverKind::Party, {1}};
  spec.protected_inputs = {0, 2};
  spec.given = Given::Sum;
  EXPECT_TRUE(secrecy_enumeration_check(spec).pass);
  spec.given = Given::None;
  EXPECT_FALSE(secrecy_enumeration_check(spec).pass);
}

TEST(Secrecy, EavesdropperOnSum) {
  SecrecySpec spec;
  spec.protocol = "sum";
  spec.ring = RingSpec::modular(3);
  spec.k = 3;
  spec.observer = {ObserverKind::Eavesdropper, {}};
  spec.protected_inputs = {0, 1, 2};
  spec.given = Given::Sum;
  EXPECT_TRUE(secrecy_enumeration_check(spec).pass);
}

TEST(Secrecy, UntilPhase) {
  // Before the publish phase the middle party has seen only uniform noise.
  SecrecySpec spec;
  spec.protocol = "sum";
  spec.ring = RingSpec::modular(2);
  spec.k = 3;
  spec.observer = {ObserverKind::Party, {1}};
  spec.protected_inputs = {0, 2};
  spec.until_phase = "publish";
  EXPECT_TRUE(secrecy_enumeration_check(spec).pass);
}

TEST(Secrecy, BudgetEnforced) {
  SecrecySpec spec;
  spec.protocol = "sum";
  spec.ring = RingSpec::modular(3);
  spec.k = 4;
  spec.observer = {ObserverKind::Party, {0}};
  spec.protected_inputs = {1};
  spec.budget = 100;
  EXPECT_THROW(secrecy_enumeration_check(spec), BudgetExceeded);
}

TEST(SpecJson, Parses) {
  const json j = json::parse(R"({"protocol":"commit3","ring":"Zm:3","observer":["P1","P3"],
                                  "protected":["n2"],"given":"none","expect":"fail"})");
  const auto spec = secrecy_spec_from_json(j);
  EXPECT_EQ(spec.ring, RingSpec::modular(3));
  EXPECT_EQ(spec.observer.kind, ObserverKind::Coalition);
  EXPECT_EQ(spec.observer.parties, (std::vector<int>{0, 2}));
  EXPECT_EQ(spec.protected_inputs, (std::vector<int>{1}));
  EXPECT_EQ(spec.expect_pass, false);
  EXPECT_THROW(secrecy_spec_from_json(json::parse(R"({"protocol":"sum","observer":"X1"})")), ConfigError);
  EXPECT_EQ(secrecy_specs_from_json(json::array({j, j})).size(), 2U);
}

TEST(Coalition, ThreeOfFourHideIndividuals) {
  const auto r = coalition_closure(4, {0, 1});
  EXPECT_EQ(r.determined_subsets, (std::vector<std::vector<int>>{{2, 3}}));
  EXPECT_EQ(r.learnable, (std::vector<std::string>{"n1", "n2", "n3+n4"}));
}

TEST(Coalition, PairOfThreeLearnsThird) {
  const auto r = coalition_closure(3, {0, 1});
  EXPECT_EQ(r.determined_subsets, (std::vector<std::vector<int>>{{2}}));
}

TEST(Coalition, KMinusOneOfFive) {
  const auto r = coalition_closure(5, {1, 2, 3, 4});
  EXPECT_EQ(r.determined_subsets, (std::vector<std::vector<int>>{{0}}));
  EXPECT_EQ(r.learnable.back(), "n1");
}

TEST(Coalition, MatchesBruteForce) {
  for (int k = 3; k <= 5; ++k) {
    for (int size = 1; size < k; ++size) {
      for (int start = 0; start < k; ++start) {
        std::vector<int> coalition;
        for (int i = 0; i < size; ++i) coalition.push_back((start + i) % k);
        std::sort(coalition.begin(), coalition.end());
        const auto r = coalition_closure(k, coalition);
        const std::set<std::vector<int>> got(r.determined_subsets.begin(), r.determined_subsets.end());
        EXPECT_EQ(got, brute_force_learnable(k, coalition)) << "k=" << k << " start=" << start
                                                            << " size=" << size;
      }
    }
  }
}

TEST(Coalition, RejectsNonContiguous) {
  EXPECT_THROW(coalition_closure(4, {0, 2}), ProtocolError);
  EXPECT_THROW(coalition_closure(3, {0, 1, 2}), ProtocolError);
}

TEST(Stats, SingleIntegerHops) {
  SeededRandomness rng(3);
  auto out = protocol1_distribute({1, 1, {}}, build_cycle(3), rng);
  const auto st = transmission_stats(out.transcript);
  EXPECT_EQ(st.messages, 10U);
  // Four 1-bit payloads (0) and six 2-bit payloads (1).
  EXPECT_EQ(st.bits, 16U);
  EXPECT_EQ(st.circles, (std::vector<int>{1}));
}

TEST(Stats, RejectsOtherTranscripts) {
  SeededRandomness rng(3);
  const std::vector<Int> in{1, 2, 3};
  auto o = secure_sum(Ring(RingSpec::integers()), in, build_cycle(3), rng);
  EXPECT_THROW(transmission_stats(o.transcript), ProtocolError);
}

TEST(Stats, MessagesGrowWithDeckSize) {
  std::vector<double> xs{10, 20, 40}, ys;
  for (int r : {10, 20, 40}) {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SeededRandomness rng(seed);
      total += static_cast<double>(
          transmission_stats(protocol1_distribute({r, 10, {}}, build_cycle(3), rng).transcript).messages);
    }
    ys.push_back(total / 100);
  }
  const double mx = (10 + 20 + 40) / 3.0, my = (ys[0] + ys[1] + ys[2]) / 3.0;
  double num = 0, den = 0;
  for (int i = 0; i < 3; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  EXPECT_GT(num / den, 0.0);
}
