#include "circmpc/commitment.hpp"

#include <set>

#include "protocol_util.hpp"

namespace circmpc {

using detail::check_inputs;
using detail::open_session;
using detail::record_ring;

CommitSplit split_value(const Int& n, const Int& m, SplitMode mode, RandomSource& rng) {
  if (mode == SplitMode::Bit && (m != 2 || (n != 0 && n != 1))) {
    throw RingError("bit commitments need m = 2 and a value in {0, 1}");
  }
  const Ring ring(RingSpec::modular(m));
  if (!ring.contains(n)) throw RingError("value " + to_string(n) + " is not in Z_" + to_string(m));
  const Int r = sample_noise(ring, rng, false);
  return {r, ring.sub(n, r), n};
}

std::string to_string(CommitPhase phase) {
  return phase == CommitPhase::Committed ? "committed" : "revealed";
}

const Int& CommitmentLedger::at(int role, const std::string& label) const {
  const auto& inventory = held.at(static_cast<std::size_t>(role));
  auto it = inventory.find(label);
  if (it == inventory.end()) {
    throw ProtocolError("role " + std::to_string(role + 1) + " holds no '" + label + "'");
  }
  return it->second;
}

namespace {

void require_committed(const CommitmentLedger& ledger) {
  if (ledger.phase != CommitPhase::Committed) {
    throw ProtocolError("reveal needs phase committed, ledger is " + to_string(ledger.phase));
  }
}

// Receiver-side check; `seq` is the message being checked.
void corroborate(const Int& received, const Int& expected, int detector, std::uint64_t seq,
                 const std::string& label) {
  if (received != expected) throw CheatDetected(detector, seq, label);
}

std::string nlabel(std::size_t role) { return "n" + std::to_string(role + 1); }

}  // namespace

CommitResult commit3(const Ring& ring, const Int& n1, const Int& n2, const Int& n3,
                     const ChannelGraph& g, RandomnessProvider& rng, const RunOptions& opts) {
  auto order = cycle_order(g);
  if (order.size() != 3) throw TopologyError("commit3 needs exactly a 3-cycle");
  const std::vector<Int> inputs{n1, n2, n3};
  check_inputs(ring, inputs, 3);
  const int p1 = order[0], p2 = order[1], p3 = order[2];

  Session s = open_session("commit3", g, rng, opts);
  record_ring(s, ring);
  std::vector<Int> r(3), sh(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const int p = order[i];
    s.input(p, nlabel(i), inputs[i]);
    r[i] = s.noise(p, ring, false, "r" + std::to_string(i + 1));
    sh[i] = ring.sub(inputs[i], r[i]);
    s.derive(p, "s" + std::to_string(i + 1), sh[i]);
  }

  const Int r1_at2 = s.send(p1, p2, "r1", r[0]);
  const Int r12_at3 = s.send(p2, p3, "r1+r2", ring.add(r1_at2, r[1]));
  const Int r123_at1 = s.send(p3, p1, "r1+r2+r3", ring.add(r12_at3, r[2]));
  const Int s3_at2 = s.send(p3, p2, "s3", sh[2]);
  const Int s23_at1 = s.send(p2, p1, "s2+s3", ring.add(s3_at2, sh[1]));
  const Int s123_at3 = s.send(p1, p3, "s1+s2+s3", ring.add(s23_at1, sh[0]));

  CommitmentLedger ledger;
  ledger.ring = ring.spec();
  ledger.graph = g;
  ledger.order = std::move(order);
  ledger.own = inputs;
  ledger.held = {
      {{"s1", sh[0]}, {"s2+s3", s23_at1}, {"r1", r[0]}, {"r1+r2+r3", r123_at1}},
      {{"s2", sh[1]}, {"s3", s3_at2}, {"r1", r1_at2}, {"r2", r[1]}},
      {{"s3", sh[2]}, {"r3", r[2]}, {"r1+r2", r12_at3}, {"s1+s2+s3", s123_at3}},
  };
  return {std::move(ledger), s.finish()};
}

RevealResult decommit3(CommitmentLedger& ledger, RandomnessProvider& rng, const RunOptions& opts) {
  require_committed(ledger);
  if (ledger.order.size() != 3 || ledger.held.size() != 3) {
    throw ProtocolError("ledger is not a three-party commitment");
  }
  const Ring ring(ledger.ring);
  const int p1 = ledger.order[0], p2 = ledger.order[1], p3 = ledger.order[2];
  const auto& L = ledger;

  Session s = open_session("commit3_reveal", ledger.graph, rng, opts);
  record_ring(s, ring);
  for (std::size_t i = 0; i < 3; ++i) {
    const int p = ledger.order[i];
    s.input(p, nlabel(i), ledger.own[i]);
    for (const auto& [label, value] : ledger.held[i]) s.input(p, label, value);
  }

  // rec[i][j]: role i's reconstruction of n_{j+1}
  std::vector<std::vector<Int>> rec(3, std::vector<Int>(3));
  for (std::size_t i = 0; i < 3; ++i) rec[i][i] = ledger.own[i];

  const Int n12_at3 = ring.sub(ring.add(L.at(2, "r1+r2"), L.at(2, "s1+s2+s3")), L.at(2, "s3"));
  s.derive(p3, "n1+n2", n12_at3);
  const Int n12_at1 = s.send(p3, p1, "n1+n2", n12_at3);
  const Int n12_at2 = s.send(p3, p2, "n1+n2", n12_at3);
  rec[0][1] = ring.sub(n12_at1, L.own[0]);
  rec[1][0] = ring.sub(n12_at2, L.own[1]);

  const Int r1_at3 = s.send(p2, p3, "r1", L.at(1, "r1"));
  const Int s23_at3 = s.send(p1, p3, "s2+s3", L.at(0, "s2+s3"));
  const Int r2_at3 = ring.sub(L.at(2, "r1+r2"), r1_at3);
  const Int s2_at3 = ring.sub(s23_at3, L.at(2, "s3"));
  rec[2][1] = ring.add(r2_at3, s2_at3);
  rec[2][0] = ring.sub(n12_at3, rec[2][1]);

  const Int total_at1 = ring.add(ring.add(L.at(0, "r1+r2+r3"), L.at(0, "s1")), L.at(0, "s2+s3"));
  rec[0][2] = ring.sub(ring.sub(total_at1, L.own[0]), rec[0][1]);

  const Int r123_at2 = s.send(p1, p2, "r1+r2+r3", L.at(0, "r1+r2+r3"));
  const Int r3_at2 = ring.sub(ring.sub(r123_at2, L.at(1, "r1")), L.at(1, "r2"));
  rec[1][2] = ring.add(r3_at2, L.at(1, "s3"));

  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) s.derive(ledger.order[i], nlabel(j), rec[i][j]);
    }
  }

  s.begin_phase("confirm");
  // Every value is confirmed to its owner and to the third party, so a wrong
  // reconstruction anywhere contradicts an honest holder.
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      if (b == a) continue;
      for (std::size_t v = 0; v < 3; ++v) {
        if (v == a) continue;
        const std::string label = "confirm:" + nlabel(v);
        const std::uint64_t seq = s.next_seq();
        const Int got = s.send(ledger.order[a], ledger.order[b], label, rec[a][v]);
        corroborate(got, rec[b][v], ledger.order[b], seq, label);
      }
    }
  }

  ledger.phase = CommitPhase::Revealed;
  return {std::move(rec), s.finish()};
}

namespace {

// Labels of the forward prefix sum R_i and the backward suffix sum S_i.
std::string prefix_label(std::size_t i) {
  return i == 0 ? "r1" : "r1+..+r" + std::to_string(i + 1);
}

std::string suffix_label(std::size_t i, std::size_t k) {
  return i + 1 == k ? "s" + std::to_string(k)
                    : "s" + std::to_string(i + 1) + "+..+s" + std::to_string(k);
}

}  // namespace

CommitResult commitk(const Ring& ring, std::span<const Int> inputs, const ChannelGraph& g,
                     RandomnessProvider& rng, const RunOptions& opts) {
  auto order = cycle_order(g);
  const std::size_t k = order.size();
  if (k < 3) throw TopologyError("commitk needs a cycle of at least 3 parties");
  check_inputs(ring, inputs, static_cast<int>(k));

  Session s = open_session("commitk", g, rng, opts);
  record_ring(s, ring);
  std::vector<Int> r(k), sh(k);
  std::vector<std::map<std::string, Int>> held(k);
  for (std::size_t i = 0; i < k; ++i) {
    const int p = order[i];
    s.input(p, nlabel(i), inputs[i]);
    r[i] = s.noise(p, ring, false, "r" + std::to_string(i + 1));
    sh[i] = ring.sub(inputs[i], r[i]);
    s.derive(p, "s" + std::to_string(i + 1), sh[i]);
    held[i]["r" + std::to_string(i + 1)] = r[i];
    held[i]["s" + std::to_string(i + 1)] = sh[i];
  }

  Int prefix = r[0];
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t next = (i + 1) % k;
    if (i > 0) prefix = ring.add(prefix, r[i]);
    held[i][prefix_label(i)] = prefix;
    prefix = s.send(order[i], order[next], prefix_label(i), prefix);
    held[next][prefix_label(i)] = prefix;
  }
  Int suffix = sh[k - 1];
  for (std::size_t i = k; i-- > 0;) {
    const std::size_t prev = (i + k - 1) % k;
    if (i + 1 < k) suffix = ring.add(suffix, sh[i]);
    held[i][suffix_label(i, k)] = suffix;
    suffix = s.send(order[i], order[prev], suffix_label(i, k), suffix);
    held[prev][suffix_label(i, k)] = suffix;
  }

  CommitmentLedger ledger;
  ledger.ring = ring.spec();
  ledger.graph = g;
  ledger.order = std::move(order);
  ledger.own.assign(inputs.begin(), inputs.end());
  ledger.held = std::move(held);
  return {std::move(ledger), s.finish()};
}

RevealResult decommitk(CommitmentLedger& ledger, RandomnessProvider& rng, const RunOptions& opts) {
  require_committed(ledger);
  const std::size_t k = ledger.order.size();
  if (k < 3 || ledger.held.size() != k || ledger.own.size() != k) {
    throw ProtocolError("ledger is not a k-party cycle commitment");
  }
  const Ring ring(ledger.ring);

  Session s = open_session("commitk_reveal", ledger.graph, rng, opts);
  record_ring(s, ring);
  for (std::size_t i = 0; i < k; ++i) {
    const int p = ledger.order[i];
    s.input(p, nlabel(i), ledger.own[i]);
    for (const auto& [label, value] : ledger.held[i]) s.input(p, label, value);
  }

  // Holders of each partial sum: (sender, receiver) as roles.
  struct Partial {
    std::string label;
    std::size_t sender;
    std::size_t receiver;
  };
  std::vector<Partial> partials;
  for (std::size_t i = 0; i < k; ++i) partials.push_back({prefix_label(i), i, (i + 1) % k});
  for (std::size_t i = 0; i < k; ++i) partials.push_back({suffix_label(i, k), i, (i + k - 1) % k});

  std::map<std::string, Int> opened;
  for (const auto& part : partials) {
    Int first;
    for (const std::size_t holder : {part.sender, part.receiver}) {
      const std::size_t other = holder == part.sender ? part.receiver : part.sender;
      const std::uint64_t seq = s.next_seq();
      const Int got = s.broadcast(ledger.order[holder], part.label, ledger.at(static_cast<int>(holder), part.label));
      corroborate(got, ledger.at(static_cast<int>(other), part.label), ledger.order[other], seq,
                  part.label);
      first = got;
    }
    opened[part.label] = first;
  }

  std::vector<Int> n(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Int ri = i == 0 ? opened.at(prefix_label(0))
                          : ring.sub(opened.at(prefix_label(i)), opened.at(prefix_label(i - 1)));
    const Int si = i + 1 == k ? opened.at(suffix_label(i, k))
                              : ring.sub(opened.at(suffix_label(i, k)), opened.at(suffix_label(i + 1, k)));
    n[i] = ring.add(ri, si);
  }
  std::vector<std::vector<Int>> rec(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    if (n[i] != ledger.own[i]) {
      throw CheatDetected(ledger.order[i], s.next_seq(), nlabel(i));
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) s.derive(ledger.order[i], nlabel(j), n[j]);
    }
  }

  ledger.phase = CommitPhase::Revealed;
  return {std::move(rec), s.finish()};
}

namespace {

constexpr std::size_t kA = 0;
constexpr std::size_t kB = 1;
constexpr std::size_t kD = 2;

}  // namespace

CommitResult commit2_dummy(const Ring& ring, const Int& n1, const Int& n2, const ChannelGraph& g,
                           RandomnessProvider& rng, const RunOptions& opts) {
  require_dummy_triangle(g);
  const std::vector<Int> inputs{n1, n2};
  check_inputs(ring, inputs, 2);

  Session s = open_session("commit2", g, rng, opts, dummy_roster());
  record_ring(s, ring);
  s.input(kA, "n1", n1);
  s.input(kB, "n2", n2);
  const Int r1 = s.noise(kA, ring, false, "r1");
  const Int s1 = ring.sub(n1, r1);
  s.derive(kA, "s1", s1);
  const Int r2 = s.noise(kB, ring, false, "r2");
  const Int s2 = ring.sub(n2, r2);
  s.derive(kB, "s2", s2);

  const Int s1_at_b = s.send(kA, kB, "s1", s1);
  const Int r2_at_a = s.send(kB, kA, "r2", r2);
  const Int r12_at_d = s.send(kA, kD, "r1+r2", ring.add(r1, r2_at_a));
  const Int s12_at_d = s.send(kB, kD, "s1+s2", ring.add(s1_at_b, s2));

  CommitmentLedger ledger;
  ledger.ring = ring.spec();
  ledger.graph = g;
  ledger.order = {0, 1, 2};
  ledger.own = inputs;
  ledger.held = {
      {{"r1", r1}, {"s1", s1}, {"r2", r2_at_a}},
      {{"r2", r2}, {"s2", s2}, {"s1", s1_at_b}},
      {{"r1+r2", r12_at_d}, {"s1+s2", s12_at_d}},
  };
  return {std::move(ledger), s.finish()};
}

RevealResult decommit2_dummy(CommitmentLedger& ledger, RandomnessProvider& rng,
                             const RunOptions& opts) {
  require_committed(ledger);
  if (ledger.held.size() != 3 || ledger.own.size() != 2) {
    throw ProtocolError("ledger is not a two-party dummy commitment");
  }
  const Ring ring(ledger.ring);
  Session s = open_session("commit2_reveal", ledger.graph, rng, opts, dummy_roster());
  record_ring(s, ring);
  s.input(kA, "n1", ledger.own[kA]);
  s.input(kB, "n2", ledger.own[kB]);
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& [label, value] : ledger.held[i]) s.input(static_cast<int>(i), label, value);
  }

  const Int total = ring.add(ledger.at(kD, "r1+r2"), ledger.at(kD, "s1+s2"));
  s.derive(kD, "n1+n2", total);
  const Int total_at_a = s.send(kD, kA, "n1+n2", total);
  const Int total_at_b = s.send(kD, kB, "n1+n2", total);
  const Int n2_at_a = ring.sub(total_at_a, ledger.own[kA]);
  const Int n1_at_b = ring.sub(total_at_b, ledger.own[kB]);
  s.derive(kA, "n2", n2_at_a);
  s.derive(kB, "n1", n1_at_b);

  s.begin_phase("confirm");
  std::uint64_t seq = s.next_seq();
  corroborate(s.send(kA, kB, "confirm:n2", n2_at_a), ledger.own[kB], kB, seq, "confirm:n2");
  seq = s.next_seq();
  corroborate(s.send(kB, kA, "confirm:n1", n1_at_b), ledger.own[kA], kA, seq, "confirm:n1");

  ledger.phase = CommitPhase::Revealed;
  std::vector<std::vector<Int>> rec{{ledger.own[kA], n2_at_a}, {n1_at_b, ledger.own[kB]}, {}};
  return {std::move(rec), s.finish()};
}

Outcome<std::vector<Int>> ot_dummy(const Ring& ring, std::span<const Int> messages,
                                   std::span<const int> indices, const ChannelGraph& g,
                                   RandomnessProvider& rng, const RunOptions& opts) {
  require_dummy_triangle(g);
  const std::size_t n = messages.size();
  check_inputs(ring, messages, n);
  if (indices.empty() || indices.size() > n) {
    throw ProtocolError("need 1 <= k <= n indices, got " + std::to_string(indices.size()));
  }
  std::set<int> seen;
  for (int j : indices) {
    if (j < 1 || static_cast<std::size_t>(j) > n) {
      throw ProtocolError("index " + std::to_string(j) + " out of range 1.." + std::to_string(n));
    }
    if (!seen.insert(j).second) throw ProtocolError("duplicate index " + std::to_string(j));
  }

  Session s = open_session("ot", g, rng, opts, dummy_roster());
  record_ring(s, ring);
  s.set_meta("n", n);
  s.set_meta("k", indices.size());
  for (std::size_t i = 0; i < n; ++i) s.input(kA, "m" + std::to_string(i + 1), messages[i]);
  for (std::size_t t = 0; t < indices.size(); ++t) {
    s.input(kB, "j" + std::to_string(t + 1), indices[t]);
  }

  s.begin_phase("setup");
  std::vector<Int> shares(n), r_at_d(n), s_at_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string idx = std::to_string(i + 1);
    const Int r = s.noise(kA, ring, false, "r" + idx);
    shares[i] = ring.sub(messages[i], r);
    s.derive(kA, "s" + idx, shares[i]);
    r_at_d[i] = s.send(kA, kD, "r" + idx, r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    s_at_b[i] = s.send(kA, kB, "s" + std::to_string(i + 1), shares[i]);
  }

  s.begin_phase("transfer");
  std::vector<Int> wanted;
  for (int j : indices) {
    const Int asked = s.send(kB, kD, "index", j, PayloadKind::Index);
    if (asked < 1 || asked > n) throw ProtocolError("D got out-of-range index " + to_string(asked));
    wanted.push_back(asked);
  }
  std::vector<Int> out;
  for (std::size_t t = 0; t < indices.size(); ++t) {
    const auto i = static_cast<std::size_t>(wanted[t]) - 1;
    const Int r = s.send(kD, kB, "r" + std::to_string(i + 1), r_at_d[i]);
    const auto j = static_cast<std::size_t>(indices[t]) - 1;
    out.push_back(ring.add(r, s_at_b[j]));
    s.derive(kB, "m" + std::to_string(j + 1), out.back());
  }
  return {std::move(out), s.finish()};
}

}  // namespace circmpc
