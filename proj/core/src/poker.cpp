#include "circmpc/poker.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "protocol_util.hpp"

namespace circmpc {

using detail::open_session;

namespace {

// How a deal is wired onto a session: seat order around the cycle, who runs
// each public draw, and which two players synthesize each dummy's counters.
struct Table {
  std::vector<int> order;
  std::vector<int> succ;  // by party index
  std::function<DrawRoles(std::size_t)> roles;
  std::map<int, std::pair<int, int>> helpers;
  std::size_t draws = 0;
};

Table cycle_table(const std::vector<int>& order, int parties) {
  Table t;
  t.order = order;
  t.succ.assign(static_cast<std::size_t>(parties), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    t.succ[static_cast<std::size_t>(order[i])] = order[(i + 1) % order.size()];
  }
  return t;
}

Int mod_floor(const Int& x, const Int& M) {
  Int r = x % M;
  if (r < 0) r += M;
  return r;
}

Int collective_draw(Session& s, const Int& M, DrawRoles roles, const std::string& label,
                    bool publish) {
  if (M < 1) throw ProtocolError("collective draw needs M >= 1");
  if (roles.first == roles.second || roles.first == roles.receiver ||
      roles.second == roles.receiver) {
    throw ProtocolError("collective draw needs three distinct parties");
  }
  for (int c : {roles.first, roles.second}) {
    if (s.capability(c) == Capability::Dummy) {
      throw ProtocolError("contributor P" + std::to_string(c + 1) + " is a dummy");
    }
  }
  const Int a = s.uniform(roles.first, 0, M - 1, label);
  const Int got_a = s.send(roles.first, roles.receiver, label, a);
  const Int b = s.uniform(roles.second, 0, M - 1, label);
  const Int got_b = s.send(roles.second, roles.receiver, label, b);
  const Int m = mod_floor(got_a + got_b, M);
  s.derive(roles.receiver, label, m);
  if (publish) return mod_floor(s.broadcast(roles.receiver, label, m), M);
  return m;
}

Int public_draw(Session& s, Table& t, const Int& M, const std::string& label) {
  return collective_draw(s, M, t.roles(t.draws++), label, true);
}

int draw_counter(Session& s, const Table& t, int p, int N) {
  if (s.capability(p) == Capability::Full) return static_cast<int>(s.uniform(p, 1, N, "c"));
  auto it = t.helpers.find(p);
  if (it == t.helpers.end()) {
    throw ProtocolError("no helpers assigned for dummy P" + std::to_string(p + 1));
  }
  const auto [a, b] = it->second;
  const std::string label = "c@P" + std::to_string(p + 1);
  const Int ca = s.send(a, p, "counter-share", s.uniform(a, 1, N, label));
  const Int cb = s.send(b, p, "counter-share", s.uniform(b, 1, N, label));
  const int c = combine_counter(static_cast<int>(mod_floor(ca, N)),
                                static_cast<int>(mod_floor(cb, N)), N);
  s.derive(p, "c", c);
  return c;
}

std::vector<int> lottery_quotas(Session& s, Table& t, int r) {
  const auto k = static_cast<int>(t.order.size());
  std::vector<int> quotas(t.succ.size(), 0);
  for (int p : t.order) quotas[static_cast<std::size_t>(p)] = r / k;
  std::vector<int> remaining = t.order;
  std::sort(remaining.begin(), remaining.end());
  for (int e = 0; e < r % k; ++e) {
    const auto pick = static_cast<std::size_t>(
        public_draw(s, t, static_cast<int>(remaining.size()), "quota-lottery"));
    ++quotas[static_cast<std::size_t>(remaining[pick])];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return quotas;
}

int public_starter(Session& s, Table& t) {
  const auto k = static_cast<int>(t.order.size());
  return t.order[static_cast<std::size_t>(public_draw(s, t, k, "starter"))];
}

// Circulates 0..r around the table until every integer is kept and r has
// passed each player N+1 times.
DealResult circulate(Session& s, Table& t, int r, int N, std::vector<int> quotas, int starter) {
  if (r < 1) throw ProtocolError("need r >= 1 integers to deal");
  if (N < 1) throw ProtocolError("counter bound N must be >= 1");
  const std::size_t parties = t.succ.size();
  s.set_meta("r", r);
  s.set_meta("k", t.order.size());
  s.set_meta("N", N);
  s.set_meta("quotas", quotas);
  s.set_meta("starter", starter);

  DealResult out;
  out.hands.assign(parties, {});
  out.starter = starter;

  std::vector<int> counter(parties, 0);
  for (int p : t.order) counter[static_cast<std::size_t>(p)] = draw_counter(s, t, p, N);

  std::vector<std::vector<int>> seen(parties, std::vector<int>(static_cast<std::size_t>(r) + 1, 0));
  int releaser_of_r = -1;  // player that first sent r

  s.begin_phase("circulate");
  int sender = starter;
  int payload = 0;
  // Each integer is kept within N+1 circles and r makes N+1 more.
  const std::uint64_t hop_limit =
      2 * static_cast<std::uint64_t>(r + 2) * t.order.size() * static_cast<std::uint64_t>(N + 1);
  for (std::uint64_t hops = 0;; ++hops) {
    if (hops > hop_limit) throw ProtocolError("circulation did not terminate");
    const int p = t.succ[static_cast<std::size_t>(sender)];
    const Int delivered = s.send(sender, p, "int", payload, PayloadKind::Index);
    if (delivered < 0 || delivered > r) {
      throw ProtocolError("P" + std::to_string(p + 1) + " received out-of-range integer " +
                          to_string(delivered));
    }
    const int m = static_cast<int>(delivered);
    const auto pi = static_cast<std::size_t>(p);
    const int times = ++seen[pi][static_cast<std::size_t>(m)];
    const bool active = m == 0 ? out.zero_keeper < 0
                               : static_cast<int>(out.hands[pi].size()) < quotas[pi];
    int next = m;
    if (active && times > counter[pi]) {
      s.derive(p, "keep", m);
      if (m == 0) {
        out.zero_keeper = p;
      } else {
        out.hands[pi].push_back(m);
      }
      // The keeper of r passes it along as if it had not taken it.
      if (m != r) {
        next = m + 1;
        counter[pi] = draw_counter(s, t, p, N);
        if (next == r) releaser_of_r = p;
      }
    } else if (active && times == 1) {
      counter[pi] = draw_counter(s, t, p, N);
    }

    if (m == r && times >= N + 1 && p == releaser_of_r) break;
    sender = p;
    payload = next;
  }

  for (std::size_t p = 0; p < parties; ++p) {
    if (static_cast<int>(out.hands[p].size()) != quotas[p]) {
      throw ProtocolError("deal ended with P" + std::to_string(p + 1) + " holding " +
                          std::to_string(out.hands[p].size()) + " of " +
                          std::to_string(quotas[p]) + " integers");
    }
    std::sort(out.hands[p].begin(), out.hands[p].end());
  }
  out.quotas = std::move(quotas);
  return out;
}

std::vector<int> shuffle_in_session(Session& s, Table& t, int m,
                                    std::vector<std::pair<int, int>>* swaps) {
  if (m < 1) throw ProtocolError("deck size must be >= 1");
  std::vector<int> a(static_cast<std::size_t>(m));
  std::iota(a.begin(), a.end(), 1);
  for (int i = 1; i < m; ++i) {
    const int j = i + static_cast<int>(public_draw(s, t, m - i + 1, "swap" + std::to_string(i)));
    std::swap(a[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(j - 1)]);
    if (swaps) swaps->emplace_back(i, j);
  }
  return a;
}

Table full_cycle_table(const ChannelGraph& g) {
  const auto order = cycle_order(g);
  Table t = cycle_table(order, g.size());
  t.roles = [order](std::size_t n) {
    return protocol2_roles(static_cast<int>(n % order.size()) + 1, order);
  };
  return t;
}

void check_quotas(const std::vector<int>& quotas, int r, std::size_t k) {
  if (quotas.size() != k) throw ProtocolError("need one quota per player");
  if (std::accumulate(quotas.begin(), quotas.end(), 0) != r) {
    throw ProtocolError("quotas must sum to r");
  }
  const auto [lo, hi] = std::minmax_element(quotas.begin(), quotas.end());
  if (*lo < 0 || *hi - *lo > 1) throw ProtocolError("quotas must be >= 0 and differ by at most 1");
}

}  // namespace

DrawRoles protocol2_roles(int i, const std::vector<int>& order) {
  const auto k = static_cast<int>(order.size());
  if (k < 3) throw TopologyError("collective draws need k >= 3");
  const int idx = (((i - 1) % k) + k) % k;  // position of P_i
  return {order[static_cast<std::size_t>((idx + 1) % k)], order[static_cast<std::size_t>(idx)],
          order[static_cast<std::size_t>((idx + 2) % k)]};
}

Outcome<Int> protocol2_random3(const Int& M, DrawRoles roles, const ChannelGraph& g,
                               RandomnessProvider& rng, const RunOptions& opts) {
  Session s = open_session("protocol2", g, rng, opts);
  s.set_meta("M", to_string(M));
  const Int m = collective_draw(s, M, roles, "n", false);
  return {m, s.finish()};
}

Outcome<Int> protocol2_random_k(const Int& M, int i, const ChannelGraph& g,
                                RandomnessProvider& rng, const RunOptions& opts) {
  return protocol2_random3(M, protocol2_roles(i, cycle_order(g)), g, rng, opts);
}

Outcome<DealResult> protocol1_distribute(const DealConfig& cfg, const ChannelGraph& g,
                                         RandomnessProvider& rng, const RunOptions& opts) {
  Table t = full_cycle_table(g);
  Session s = open_session("deal", g, rng, opts);
  s.begin_phase("setup");
  std::vector<int> quotas;
  if (cfg.quotas.empty()) {
    quotas = lottery_quotas(s, t, cfg.r);
  } else {
    check_quotas(cfg.quotas, cfg.r, t.order.size());
    quotas.assign(t.succ.size(), 0);
    for (std::size_t i = 0; i < cfg.quotas.size(); ++i) {
      quotas[static_cast<std::size_t>(t.order[i])] = cfg.quotas[i];
    }
  }
  const int starter = public_starter(s, t);
  DealResult deal = circulate(s, t, cfg.r, cfg.N, std::move(quotas), starter);
  return {std::move(deal), s.finish()};
}

Outcome<ShuffleResult> knuth_shuffle(int m, const ChannelGraph& g, RandomnessProvider& rng,
                                     const RunOptions& opts) {
  Table t = full_cycle_table(g);
  Session s = open_session("shuffle", g, rng, opts);
  s.set_meta("m", m);
  ShuffleResult out;
  out.permutation = shuffle_in_session(s, t, m, &out.swaps);
  return {std::move(out), s.finish()};
}

std::vector<int> apply_swaps(int m, const std::vector<std::pair<int, int>>& swaps) {
  std::vector<int> a(static_cast<std::size_t>(m));
  std::iota(a.begin(), a.end(), 1);
  for (const auto& [i, j] : swaps) {
    std::swap(a.at(static_cast<std::size_t>(i - 1)), a.at(static_cast<std::size_t>(j - 1)));
  }
  return a;
}

std::vector<std::string> deck_labels(int m) {
  static const char* ranks[] = {"A", "2", "3", "4", "5", "6", "7",
                                "8", "9", "10", "J", "Q", "K"};
  static const char* suits[] = {"S", "H", "D", "C"};
  std::vector<std::string> out;
  for (int i = 0; i < m; ++i) {
    if (i < 52) {
      out.push_back(std::string(ranks[i % 13]) + suits[i / 13]);
    } else {
      out.push_back("card" + std::to_string(i + 1));
    }
  }
  return out;
}

Outcome<DealResult> deal_deck(int m, int N, const ChannelGraph& g, RandomnessProvider& rng,
                              const RunOptions& opts) {
  Table t = full_cycle_table(g);
  Session s = open_session("deal", g, rng, opts);
  s.begin_phase("setup");
  auto quotas = lottery_quotas(s, t, m);
  const int starter = public_starter(s, t);
  DealResult deal = circulate(s, t, m, N, std::move(quotas), starter);

  s.begin_phase("shuffle");
  deal.permutation = shuffle_in_session(s, t, m, nullptr);
  const auto names = deck_labels(m);
  for (const auto& hand : deal.hands) {
    std::vector<std::string> labels;
    for (int i : hand) {
      labels.push_back(names[static_cast<std::size_t>(deal.permutation[static_cast<std::size_t>(i - 1)] - 1)]);
    }
    deal.labels.push_back(std::move(labels));
  }
  return {std::move(deal), s.finish()};
}

int combine_counter(int c1, int c2, int N) {
  if (N < 1) throw ProtocolError("counter bound N must be >= 1");
  const int v = ((c1 + c2) % N + N) % N;
  return v == 0 ? N : v;
}

Outcome<TwoPlayerDeal> dummy_deal_two_players(int m, int N, RandomnessProvider& rng,
                                              const RunOptions& opts) {
  const ChannelGraph g = build_dummy_triangle();
  Table t = cycle_table(cycle_order(g), g.size());
  t.roles = [](std::size_t) { return DrawRoles{2, 0, 1}; };
  t.helpers[2] = {0, 1};

  Session s = open_session("dummy_deal", g, rng, opts, dummy_roster());
  s.begin_phase("setup");
  auto quotas = lottery_quotas(s, t, m);
  const int starter = public_starter(s, t);
  TwoPlayerDeal out;
  out.deal = circulate(s, t, m, N, std::move(quotas), starter);
  out.discarded = std::move(out.deal.hands[2]);
  out.deal.hands[2].clear();
  return {std::move(out), s.finish()};
}

int dealer_dummy_count(int m, int k, int s) {
  if (s < 1) throw ProtocolError("cards per player must be >= 1");
  const auto approx = static_cast<int>(std::lround(static_cast<double>(m) / s));
  return std::max(1, approx - k);
}

namespace {

std::vector<Capability> dealer_roster(int k, int d) {
  std::vector<Capability> roster(static_cast<std::size_t>(k), Capability::Full);
  roster.resize(static_cast<std::size_t>(k + d), Capability::Dummy);
  return roster;
}

}  // namespace

Outcome<DealerTable> dummy_dealer_fixed_hands(int m, int k, int s, int N,
                                              std::optional<int> dummies,
                                              RandomnessProvider& rng, const RunOptions& opts) {
  if (k < 2) throw ProtocolError("need at least 2 real players");
  if (s < 1) throw ProtocolError("cards per player must be >= 1");
  if (k * s > m) {
    throw ProtocolError("infeasible: " + std::to_string(k) + " players x " + std::to_string(s) +
                        " cards exceeds the deck of " + std::to_string(m));
  }
  const int d = dummies ? *dummies : dealer_dummy_count(m, k, s);
  if (d < 1) throw ProtocolError("need at least one dummy");
  const int n = k + d;

  const ChannelGraph cycle = build_cycle(n);
  DealerTable table;
  table.real_players = k;
  table.dummies = d;
  table.dealer = k;
  table.N = N;
  table.graph = cycle;
  for (int dm = k; dm < n; ++dm) {
    table.graph.ensure_channel(dm, 0);
    table.graph.ensure_channel(dm, k - 1);
  }
  for (int p = 0; p < k; ++p) table.graph.ensure_channel(table.dealer, p);

  Table t = cycle_table(cycle_order(cycle), n);
  const int dealer = table.dealer;
  t.roles = [dealer, k](std::size_t) { return DrawRoles{dealer, 0, k - 1}; };
  for (int dm = k; dm < n; ++dm) t.helpers[dm] = {0, k - 1};

  RunOptions run = opts;
  if (run.roster.empty()) run.roster = dealer_roster(k, d);
  Session sess = open_session("dealer", table.graph, rng, run);
  sess.set_meta("s", s);
  sess.set_meta("dummies", d);

  std::vector<int> quotas(static_cast<std::size_t>(n), s);
  const int rest = m - k * s;
  for (int i = 0; i < d; ++i) {
    quotas[static_cast<std::size_t>(k + i)] = rest / d + (i < rest % d ? 1 : 0);
  }
  sess.begin_phase("setup");
  const int starter = public_starter(sess, t);
  DealResult deal = circulate(sess, t, m, N, std::move(quotas), starter);

  sess.begin_phase("consolidate");
  std::vector<int> carried;
  for (int dm = n - 1; dm > dealer; --dm) {
    auto& own = deal.hands[static_cast<std::size_t>(dm)];
    carried.insert(carried.end(), own.begin(), own.end());
    for (int& card : carried) card = static_cast<int>(sess.send(dm, dm - 1, "card", card, PayloadKind::Index));
  }
  const auto& dealer_hand = deal.hands[static_cast<std::size_t>(dealer)];
  carried.insert(carried.end(), dealer_hand.begin(), dealer_hand.end());
  std::sort(carried.begin(), carried.end());
  table.residual = std::move(carried);
  table.hands.assign(deal.hands.begin(), deal.hands.begin() + k);
  return {std::move(table), sess.finish()};
}

Outcome<std::vector<int>> dealer_draw(DealerTable& table, int player, int n,
                                      RandomnessProvider& rng) {
  if (player < 0 || player >= table.real_players) {
    throw ProtocolError("draw requests come from real players only");
  }
  if (n < 0 || static_cast<std::size_t>(n) > table.residual.size()) {
    throw ProtocolError("dealer holds only " + std::to_string(table.residual.size()) + " cards");
  }
  RunOptions run;
  run.roster = dealer_roster(table.real_players, table.dummies);
  Session s = open_session("dealer_draw", table.graph, rng, run);
  std::vector<int> served;
  const DrawRoles roles{table.dealer, 0, table.real_players - 1};
  for (int i = 0; i < n; ++i) {
    const auto pick = static_cast<std::size_t>(
        collective_draw(s, static_cast<int>(table.residual.size()), roles, "pick", true));
    const int card = table.residual[pick];
    table.residual.erase(table.residual.begin() + static_cast<std::ptrdiff_t>(pick));
    served.push_back(static_cast<int>(s.send(table.dealer, player, "card", card, PayloadKind::Index)));
  }
  auto& hand = table.hands[static_cast<std::size_t>(player)];
  hand.insert(hand.end(), served.begin(), served.end());
  std::sort(hand.begin(), hand.end());
  return {std::move(served), s.finish()};
}

Rational expected_circles(int N, int k) {
  if (N < 1 || k < 1) throw ProtocolError("expected_circles needs N >= 1 and k >= 1");
  Int num = 0;
  for (int j = 1; j <= N; ++j) num += boost::multiprecision::pow(Int(j), static_cast<unsigned>(k));
  return Rational(num, boost::multiprecision::pow(Int(N), static_cast<unsigned>(k)));
}

}  // namespace circmpc
