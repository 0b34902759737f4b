#include "circmpc/secret_sharing.hpp"

#include <string>

#include "protocol_util.hpp"

namespace circmpc {

using detail::open_session;
using detail::record_ring;

ChannelGraph build_sharing_graph(int k) {
  ChannelGraph cycle = build_cycle(k);
  ChannelGraph g(k + 1);
  for (const auto& c : cycle.channels()) g.add_channel(c.a, c.b, c.security);
  for (int p = 0; p < k; ++p) g.add_channel(k, p);
  return g;
}

namespace {

std::string idx(int party) { return std::to_string(party + 1); }

// Runs one subroutine pass; summands[p] receives party p's summand.
void spread(Session& s, const Ring& ring, const std::vector<int>& order, std::size_t start,
            const Int& M, const std::string& tag, std::vector<Int>& summands) {
  const std::size_t k = order.size();
  const int initiator = order[start];
  const Int own = s.noise(initiator, ring, false, "m" + tag);
  Int running = s.send(initiator, order[(start + 1) % k], "share" + tag, ring.sub(M, own));
  for (std::size_t step = 1; step < k; ++step) {
    const int p = order[(start + step) % k];
    const Int mj = s.noise(p, ring, false, "m" + tag);
    summands[static_cast<std::size_t>(p)] = mj;
    s.derive(p, "summand" + tag, mj);
    running = s.send(p, order[(start + step + 1) % k], "share" + tag, ring.sub(running, mj));
  }
  const Int mine = ring.add(running, own);
  summands[static_cast<std::size_t>(initiator)] = mine;
  s.derive(initiator, "summand" + tag, mine);
}

}  // namespace

Outcome<std::vector<Int>> distribute_shares_subroutine(const Ring& ring, const Int& M,
                                                       int initiator, const ChannelGraph& g,
                                                       RandomnessProvider& rng,
                                                       const RunOptions& opts) {
  const auto order = cycle_order(g);
  if (!ring.contains(M)) throw RingError("value to split is not a ring element");
  std::size_t start = order.size();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == initiator) start = i;
  }
  if (start == order.size()) throw ProtocolError("initiator is not on the cycle");
  Session s = open_session("subroutine", g, rng, opts);
  record_ring(s, ring);
  s.input(initiator, "M", M);
  std::vector<Int> summands(static_cast<std::size_t>(g.size()), 0);
  spread(s, ring, order, start, M, "", summands);
  return {std::move(summands), s.finish()};
}

Outcome<std::vector<Int>> share_secret_kk(const Ring& ring, const Int& secret,
                                          const ChannelGraph& g, RandomnessProvider& rng,
                                          const RunOptions& opts) {
  const int dealer = g.size() - 1;
  const auto order = cycle_order(g, iota_parties(dealer));
  std::vector<std::pair<int, int>> dealer_links;
  for (int p : order) dealer_links.emplace_back(dealer, p);
  require_secure_channels(g, dealer_links);
  if (!ring.contains(secret)) throw RingError("secret is not a ring element");
  const std::size_t k = order.size();

  Session s = open_session("share", g, rng, opts);
  record_ring(s, ring);
  s.input(dealer, "N", secret);

  std::vector<Int> parts(k);
  Int rest = secret;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    parts[i] = s.noise(dealer, ring, false, "n" + idx(order[i]));
    rest = ring.sub(rest, parts[i]);
  }
  parts[k - 1] = rest;
  s.derive(dealer, "n" + idx(order[k - 1]), rest);

  std::vector<Int> shares(static_cast<std::size_t>(dealer), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const int p = order[i];
    s.begin_phase("loop" + idx(p));
    const Int got = s.send(dealer, p, "n" + idx(p), parts[i]);
    std::vector<Int> summands(static_cast<std::size_t>(dealer), 0);
    spread(s, ring, order, i, got, "[" + idx(p) + "]", summands);
    for (std::size_t j = 0; j < shares.size(); ++j) shares[j] = ring.add(shares[j], summands[j]);
  }
  for (int p : order) s.derive(p, "s" + idx(p), shares[static_cast<std::size_t>(p)]);
  return {std::move(shares), s.finish()};
}

Int reconstruct(const Ring& ring, std::span<const std::optional<Int>> shares) {
  if (shares.empty()) throw ProtocolError("no shares given");
  Int total = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (!shares[i]) {
      throw ProtocolError("share " + std::to_string(i + 1) + " is missing; all " +
                          std::to_string(shares.size()) + " are required");
    }
    total = ring.add(total, ring.reduce(*shares[i]));
  }
  return total;
}

}  // namespace circmpc
