#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "circmpc/engine.hpp"

namespace circmpc {

template <class T>
struct Outcome {
  T result;
  Transcript transcript;
};

// Sum of every party's element around a secure cycle. One noised forward
// pass, P1 publishes S, the others broadcast their noise, all subtract.
Outcome<Int> secure_sum(const Ring& ring, std::span<const Int> inputs, const ChannelGraph& g,
                        RandomnessProvider& rng, const RunOptions& opts = {});

// Parties 0..k-1 on a secure cycle, Boss = party k with insecure links to the
// first and last party.
ChannelGraph build_rating_graph(int k);

// Forward noised pass ends at the Boss; the noise is collected in the reverse
// direction and also sent to the Boss, who subtracts.
Outcome<Int> secure_rating(const Ring& ring, std::span<const Int> scores, const ChannelGraph& g,
                           RandomnessProvider& rng, const RunOptions& opts = {});

// Product of nonzero (Z) / unit (Z_m) elements with multiplicative noise.
Outcome<Int> secure_product(const Ring& ring, std::span<const Int> inputs, const ChannelGraph& g,
                            RandomnessProvider& rng, const RunOptions& opts = {});

// sum_i n_i^r with the single mask n_0 drawn by P1; the result is held by P1.
Outcome<Int> sum_of_powers(const Ring& ring, std::span<const Int> inputs, std::uint64_t exponent,
                           const ChannelGraph& g, RandomnessProvider& rng,
                           const RunOptions& opts = {});

// Elementary symmetric values e_1..e_k from power sums p_1..p_k via Newton's
// identities. Over Z_m every j <= k must be invertible.
std::vector<Int> symmetric_from_power_sums(const Ring& ring, std::span<const Int> power_sums);

// Runs sum_of_powers for r = 1..k and applies Newton's identities. P1 ends up
// holding k power sums, which can pin down inputs: this composition is not
// private and exists for completeness.
Outcome<std::vector<Int>> elementary_symmetric(const Ring& ring, std::span<const Int> inputs,
                                               const ChannelGraph& g, RandomnessProvider& rng);

// n1*n2 + n2*n3 on a 3-cycle, finished by P2.
Outcome<Int> example_f1(const Ring& ring, const Int& n1, const Int& n2, const Int& n3,
                        const ChannelGraph& g, RandomnessProvider& rng,
                        const RunOptions& opts = {});

using UnaryFunction = std::function<Int(const Int&)>;

// n1*n2 + g(n3) on a 3-cycle, finished by P3; messages travel both ways.
Outcome<Int> example_f2(const Ring& ring, const Int& n1, const Int& n2, const Int& n3,
                        const UnaryFunction& g_func, const ChannelGraph& g,
                        RandomnessProvider& rng, const RunOptions& opts = {});

enum class Verdict { Positive, Negative, Equal };

std::string to_string(Verdict v);

// A = P1, B = P2, D = P3 (dummy). Secure links A-B, A-D, B-D.
ChannelGraph build_dummy_triangle();
// Throws TopologyError unless A-B, A-D and B-D are all secure.
void require_dummy_triangle(const ChannelGraph& g);
std::vector<Capability> dummy_roster();

// D learns n1 - n2 and announces its sign. In modular mode the difference is
// read in (-m/2, m/2], so |n1 - n2| < m/2 is required.
Outcome<Verdict> millionaires_compare(const Ring& ring, const Int& n1, const Int& n2,
                                      const ChannelGraph& g, RandomnessProvider& rng,
                                      const RunOptions& opts = {});

struct BitwiseVerdict {
  Verdict verdict;  // Positive = n1 > n2
  std::optional<int> deciding_bit;
};

// One comparison per bit, most significant first, over Z_3; stops at the
// first nonzero bit difference.
Outcome<BitwiseVerdict> millionaires_bitwise(const Int& n1, const Int& n2, int bit_width,
                                             const ChannelGraph& g, RandomnessProvider& rng,
                                             const RunOptions& opts = {});

}  // namespace circmpc
