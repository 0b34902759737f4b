#include "circmpc/arith.hpp"

#include "protocol_util.hpp"

#include <string>

namespace circmpc {

using detail::check_inputs;
using detail::open_session;
using detail::record_ring;

namespace {

std::string n(int party) { return "n" + std::to_string(party + 1); }
std::string n0(int party) { return "n0" + std::to_string(party + 1); }

// Forward noised pass of the sum protocol; returns what P1 gets back from Pk.
// noise[i] is the noise of order[i].
Int noised_forward_pass(Session& s, const Ring& ring, const std::vector<int>& order,
                        std::span<const Int> inputs, std::vector<Int>& noise, int last_hop_to) {
  const std::size_t k = order.size();
  noise.assign(k, 0);
  Int acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const int p = order[i];
    noise[i] = s.noise(p, ring, false, n0(p));
    const Int own = ring.add(inputs[static_cast<std::size_t>(p)], noise[i]);
    const Int outgoing = i == 0 ? own : ring.add(acc, own);
    const int to = i + 1 < k ? order[i + 1] : last_hop_to;
    acc = s.send(p, to, "partial" + std::to_string(i + 1), outgoing);
  }
  return acc;
}

}  // namespace

Outcome<Int> secure_sum(const Ring& ring, std::span<const Int> inputs, const ChannelGraph& g,
                        RandomnessProvider& rng, const RunOptions& opts) {
  const auto order = cycle_order(g);
  check_inputs(ring, inputs, order.size());
  Session s = open_session("sum", g, rng, opts);
  record_ring(s, ring);
  for (int p : order) s.input(p, n(p), inputs[static_cast<std::size_t>(p)]);

  std::vector<Int> noise;
  const int first = order.front();
  const Int back = noised_forward_pass(s, ring, order, inputs, noise, first);

  s.begin_phase("publish");
  const Int published = ring.sub(back, noise[0]);
  s.derive(first, "S", published);
  const Int S = s.broadcast(first, "S", published);

  s.begin_phase("noise-broadcast");
  Int noise_total = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    noise_total = ring.add(noise_total, s.broadcast(order[i], n0(order[i]), noise[i]));
  }
  const Int total = ring.sub(S, noise_total);
  for (int p : order) s.derive(p, "sum", total);
  return {total, s.finish()};
}

ChannelGraph build_rating_graph(int k) {
  ChannelGraph cycle = build_cycle(k);
  ChannelGraph g(k + 1);
  for (const auto& c : cycle.channels()) g.add_channel(c.a, c.b, c.security);
  g.add_channel(k - 1, k, Security::Insecure);
  g.add_channel(0, k, Security::Insecure);
  return g;
}

Outcome<Int> secure_rating(const Ring& ring, std::span<const Int> scores, const ChannelGraph& g,
                           RandomnessProvider& rng, const RunOptions& opts) {
  const int boss = g.size() - 1;
  const auto order = cycle_order(g, iota_parties(boss));
  const std::size_t k = order.size();
  check_inputs(ring, scores, k);
  if (!g.has_channel(order.front(), boss) || !g.has_channel(order.back(), boss)) {
    throw TopologyError("the Boss must be linked to the first and last party");
  }
  Session s = open_session("rating", g, rng, opts);
  record_ring(s, ring);
  for (int p : order) s.input(p, n(p), scores[static_cast<std::size_t>(p)]);

  std::vector<Int> noise;
  const Int forward = noised_forward_pass(s, ring, order, scores, noise, boss);

  s.begin_phase("adjustment");
  Int adj = 0;
  for (std::size_t i = k; i-- > 0;) {
    const int p = order[i];
    const Int outgoing = i + 1 == k ? noise[i] : ring.add(adj, noise[i]);
    const int to = i == 0 ? boss : order[i - 1];
    adj = s.send(p, to, "adjustment" + std::to_string(i + 1), outgoing);
  }
  const Int total = ring.sub(forward, adj);
  s.derive(boss, "sum", total);
  return {total, s.finish()};
}

Outcome<Int> secure_product(const Ring& ring, std::span<const Int> inputs, const ChannelGraph& g,
                            RandomnessProvider& rng, const RunOptions& opts) {
  const auto order = cycle_order(g);
  check_inputs(ring, inputs, order.size());
  for (const auto& x : inputs) {
    if (!ring.is_legal_divisor(x)) {
      throw RingError("product input " + to_string(x) + (ring.is_modular() ? " is not a unit" : " is zero"));
    }
  }
  Session s = open_session("product", g, rng, opts);
  record_ring(s, ring);
  for (int p : order) s.input(p, n(p), inputs[static_cast<std::size_t>(p)]);

  const std::size_t k = order.size();
  std::vector<Int> noise(k);
  Int acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const int p = order[i];
    noise[i] = s.noise(p, ring, true, n0(p));
    const Int own = ring.mul(inputs[static_cast<std::size_t>(p)], noise[i]);
    const Int outgoing = i == 0 ? own : ring.mul(acc, own);
    acc = s.send(p, order[(i + 1) % k], "partial" + std::to_string(i + 1), outgoing);
  }

  s.begin_phase("publish");
  const int first = order.front();
  const Int published = ring.exact_div(acc, noise[0]);
  s.derive(first, "P", published);
  const Int P = s.broadcast(first, "P", published);

  s.begin_phase("noise-broadcast");
  Int noise_product = ring.one();
  for (std::size_t i = 1; i < k; ++i) {
    noise_product = ring.mul(noise_product, s.broadcast(order[i], n0(order[i]), noise[i]));
  }
  const Int product = ring.exact_div(P, noise_product);
  for (int p : order) s.derive(p, "product", product);
  return {product, s.finish()};
}

namespace {

Int power_sum_round(Session& s, const Ring& ring, const std::vector<int>& order,
                    std::span<const Int> inputs, std::uint64_t r) {
  if (r < 1) throw ProtocolError("exponent must be >= 1");
  const std::string tag = "^" + std::to_string(r);
  const std::size_t k = order.size();
  const int first = order.front();
  const Int mask = s.noise(first, ring, false, "n0" + tag);
  Int acc = s.send(first, order[1], "n0" + tag, mask);
  for (std::size_t i = 1; i < k; ++i) {
    const int p = order[i];
    const Int power = ring.pow(inputs[static_cast<std::size_t>(p)], r);
    acc = s.send(p, order[(i + 1) % k], "powersum" + std::to_string(i + 1) + tag,
                 ring.add(acc, power));
  }
  const Int own = ring.pow(inputs[static_cast<std::size_t>(first)], r);
  const Int result = ring.sub(acc, ring.sub(mask, own));
  s.derive(first, "sum" + tag, result);
  return result;
}

}  // namespace

Outcome<Int> sum_of_powers(const Ring& ring, std::span<const Int> inputs, std::uint64_t exponent,
                           const ChannelGraph& g, RandomnessProvider& rng,
                           const RunOptions& opts) {
  const auto order = cycle_order(g);
  check_inputs(ring, inputs, order.size());
  Session s = open_session("powers", g, rng, opts);
  record_ring(s, ring);
  for (int p : order) s.input(p, n(p), inputs[static_cast<std::size_t>(p)]);
  const Int result = power_sum_round(s, ring, order, inputs, exponent);
  return {result, s.finish()};
}

std::vector<Int> symmetric_from_power_sums(const Ring& ring, std::span<const Int> power_sums) {
  const std::size_t k = power_sums.size();
  for (const auto& p : power_sums) {
    if (!ring.contains(p)) throw RingError("power sum " + to_string(p) + " not in ring");
  }
  std::vector<Int> e(k + 1, 0);
  e[0] = ring.one();
  for (std::size_t j = 1; j <= k; ++j) {
    Int acc = 0;
    for (std::size_t i = 1; i <= j; ++i) {
      const Int term = ring.mul(e[j - i], power_sums[i - 1]);
      acc = (i % 2 == 1) ? ring.add(acc, term) : ring.sub(acc, term);
    }
    const Int divisor = ring.reduce(Int(j));
    if (!ring.is_legal_divisor(divisor)) {
      throw RingError("Newton's identities need " + std::to_string(j) + " to be invertible in " +
                      ring.spec().to_string());
    }
    e[j] = ring.exact_div(acc, divisor);
  }
  e.erase(e.begin());
  return e;
}

Outcome<std::vector<Int>> elementary_symmetric(const Ring& ring, std::span<const Int> inputs,
                                               const ChannelGraph& g, RandomnessProvider& rng) {
  const auto order = cycle_order(g);
  check_inputs(ring, inputs, order.size());
  Session s = open_session("symmetric", g, rng, {});
  record_ring(s, ring);
  for (int p : order) s.input(p, n(p), inputs[static_cast<std::size_t>(p)]);
  std::vector<Int> sums;
  for (std::size_t r = 1; r <= order.size(); ++r) {
    s.begin_phase("power-" + std::to_string(r));
    sums.push_back(power_sum_round(s, ring, order, inputs, r));
  }
  auto e = symmetric_from_power_sums(ring, sums);
  return {std::move(e), s.finish()};
}

namespace {

std::vector<int> triangle_order(const ChannelGraph& g) {
  auto order = cycle_order(g);
  if (order.size() != 3) throw TopologyError("protocol needs exactly a 3-cycle");
  return order;
}

}  // namespace

Outcome<Int> example_f1(const Ring& ring, const Int& n1, const Int& n2, const Int& n3,
                        const ChannelGraph& g, RandomnessProvider& rng, const RunOptions& opts) {
  const auto order = triangle_order(g);
  const std::vector<Int> inputs{n1, n2, n3};
  check_inputs(ring, inputs, 3);
  const int p1 = order[0], p2 = order[1], p3 = order[2];
  Session s = open_session("f1", g, rng, opts);
  record_ring(s, ring);
  s.input(p1, "n1", n1);
  s.input(p2, "n2", n2);
  s.input(p3, "n3", n3);

  const Int mask = s.noise(p2, ring, false, "n0");
  const Int a = s.send(p2, p3, "n0", mask);
  const Int b = s.send(p3, p1, "n0+n3", ring.add(a, n3));
  const Int c = s.send(p1, p2, "n0+n3+n1", ring.add(b, n1));
  const Int result = ring.mul(ring.sub(c, mask), n2);
  s.derive(p2, "f", result);
  return {result, s.finish()};
}

Outcome<Int> example_f2(const Ring& ring, const Int& n1, const Int& n2, const Int& n3,
                        const UnaryFunction& g_func, const ChannelGraph& g,
                        RandomnessProvider& rng, const RunOptions& opts) {
  const auto order = triangle_order(g);
  const std::vector<Int> inputs{n1, n2, n3};
  check_inputs(ring, inputs, 3);
  const int p1 = order[0], p2 = order[1], p3 = order[2];
  Session s = open_session("f2", g, rng, opts);
  record_ring(s, ring);
  s.input(p1, "n1", n1);
  s.input(p2, "n2", n2);
  s.input(p3, "n3", n3);

  // Both masks must be divisors so the later divisions are exact.
  const Int a0 = s.noise(p1, ring, true, "a0");
  const Int x1 = s.send(p1, p2, "a0", a0);
  const Int x2 = s.send(p2, p3, "a0*n2", ring.mul(x1, n2));
  const Int c0 = s.noise(p3, ring, true, "c0");
  const Int x3 = s.send(p3, p1, "a0*n2*c0", ring.mul(x2, c0));
  const Int x4 = s.send(p1, p3, "n1*n2*c0", ring.exact_div(ring.mul(x3, n1), a0));
  const Int result = ring.add(ring.exact_div(x4, c0), ring.reduce(g_func(n3)));
  s.derive(p3, "f", result);
  return {result, s.finish()};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    case Verdict::Equal: return "equal";
  }
  return "equal";
}

ChannelGraph build_dummy_triangle() {
  ChannelGraph g(3);
  g.add_channel(0, 1);
  g.add_channel(0, 2);
  g.add_channel(1, 2);
  return g;
}

void require_dummy_triangle(const ChannelGraph& g) {
  if (g.size() != 3) throw TopologyError("dummy protocols need exactly A, B and D");
  require_secure_channels(g, {{0, 1}, {0, 2}, {1, 2}});
}

std::vector<Capability> dummy_roster() {
  return {Capability::Full, Capability::Full, Capability::Dummy};
}

namespace {

constexpr int kAlice = 0;
constexpr int kBob = 1;
constexpr int kDummy = 2;

Verdict compare_round(Session& s, const Ring& ring, const Int& n1, const Int& n2,
                      const std::string& tag) {
  const Int n1_minus = s.noise(kAlice, ring, false, "n1-" + tag);
  const Int n1_plus = ring.add(n1, n1_minus);
  s.derive(kAlice, "n1+" + tag, n1_plus);
  const Int at_bob = s.send(kAlice, kBob, "n1-" + tag, n1_minus);

  const Int n2_minus = s.noise(kBob, ring, false, "n2-" + tag);
  const Int n2_plus = ring.add(n2, n2_minus);
  s.derive(kBob, "n2+" + tag, n2_plus);
  const Int at_alice = s.send(kBob, kAlice, "n2-" + tag, n2_minus);

  const Int from_a = s.send(kAlice, kDummy, "n1+ + n2-" + tag, ring.add(n1_plus, at_alice));
  const Int from_b = s.send(kBob, kDummy, "n2+ + n1-" + tag, ring.add(n2_plus, at_bob));

  const Int diff = ring.lift_signed(ring.sub(from_a, from_b));
  s.derive(kDummy, "n1-n2" + tag, diff);
  const Verdict v = diff > 0 ? Verdict::Positive : diff < 0 ? Verdict::Negative : Verdict::Equal;
  s.announce(kDummy, "verdict" + tag, to_string(v));
  return v;
}

}  // namespace

Outcome<Verdict> millionaires_compare(const Ring& ring, const Int& n1, const Int& n2,
                                      const ChannelGraph& g, RandomnessProvider& rng,
                                      const RunOptions& opts) {
  require_dummy_triangle(g);
  const std::vector<Int> inputs{n1, n2};
  check_inputs(ring, inputs, 2);
  if (ring.is_modular()) {
    const Int gap = n1 > n2 ? Int(n1 - n2) : Int(n2 - n1);
    if (2 * gap >= ring.modulus()) {
      throw ProtocolError("|n1 - n2| must be below m/2 for the sign to survive reduction");
    }
  }
  Session s = open_session("millionaires", g, rng, opts, dummy_roster());
  record_ring(s, ring);
  s.input(kAlice, "n1", n1);
  s.input(kBob, "n2", n2);
  const Verdict v = compare_round(s, ring, n1, n2, "");
  return {v, s.finish()};
}

Outcome<BitwiseVerdict> millionaires_bitwise(const Int& n1, const Int& n2, int bit_width,
                                             const ChannelGraph& g, RandomnessProvider& rng,
                                             const RunOptions& opts) {
  require_dummy_triangle(g);
  if (bit_width < 1) throw ProtocolError("bit_width must be >= 1");
  const Int limit = Int(1) << bit_width;
  if (n1 < 0 || n2 < 0 || n1 >= limit || n2 >= limit) {
    throw ProtocolError("inputs must lie in [0, 2^bit_width)");
  }
  const Ring trits(RingSpec::modular(3));
  Session s = open_session("millionaires_bitwise", g, rng, opts, dummy_roster());
  record_ring(s, trits);
  s.input(kAlice, "n1", n1);
  s.input(kBob, "n2", n2);
  for (int b = bit_width - 1; b >= 0; --b) {
    const Int bit1 = (n1 >> b) & 1;
    const Int bit2 = (n2 >> b) & 1;
    const Verdict v = compare_round(s, trits, bit1, bit2, "[" + std::to_string(b) + "]");
    if (v != Verdict::Equal) return {{v, b}, s.finish()};
  }
  return {{Verdict::Equal, std::nullopt}, s.finish()};
}

}  // namespace circmpc
