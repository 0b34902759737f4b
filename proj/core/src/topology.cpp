#include "circmpc/topology.hpp"

#include <algorithm>
#include <numeric>

namespace circmpc {

std::string to_string(Security s) { return s == Security::Secure ? "secure" : "insecure"; }

ChannelGraph::ChannelGraph(int k) {
  if (k < 0) throw TopologyError("negative party count");
  adjacency_.resize(static_cast<std::size_t>(k));
}

void ChannelGraph::check_vertex(int v) const {
  if (v < 0 || v >= size()) {
    throw TopologyError("party index " + std::to_string(v) + " out of range");
  }
}

void ChannelGraph::add_channel(int a, int b, Security security) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw TopologyError("self-loop at P" + std::to_string(a + 1));
  if (has_channel(a, b)) {
    throw TopologyError("duplicate channel P" + std::to_string(a + 1) + "-P" +
                        std::to_string(b + 1));
  }
  channels_.push_back({a, b, security});
  adjacency_[static_cast<std::size_t>(a)].emplace_back(b, channels_.size() - 1);
  adjacency_[static_cast<std::size_t>(b)].emplace_back(a, channels_.size() - 1);
}

void ChannelGraph::ensure_channel(int a, int b, Security security) {
  if (!has_channel(a, b)) add_channel(a, b, security);
}

bool ChannelGraph::has_channel(int a, int b) const {
  if (a < 0 || a >= size() || b < 0 || b >= size()) return false;
  const auto& adj = adjacency_[static_cast<std::size_t>(a)];
  return std::any_of(adj.begin(), adj.end(), [b](const auto& e) { return e.first == b; });
}

Security ChannelGraph::security(int a, int b) const {
  check_vertex(a);
  for (const auto& [n, idx] : adjacency_[static_cast<std::size_t>(a)]) {
    if (n == b) return channels_[idx].security;
  }
  throw TopologyError("no channel between P" + std::to_string(a + 1) + " and P" +
                      std::to_string(b + 1));
}

std::vector<int> ChannelGraph::secure_neighbors(int v) const {
  check_vertex(v);
  std::vector<int> out;
  for (const auto& [n, idx] : adjacency_[static_cast<std::size_t>(v)]) {
    if (channels_[idx].security == Security::Secure) out.push_back(n);
  }
  return out;
}

int ChannelGraph::secure_degree(int v) const {
  return static_cast<int>(secure_neighbors(v).size());
}

ChannelGraph build_cycle(int k) {
  if (k < 3) {
    throw TopologyError("a cycle needs at least 3 parties (got " + std::to_string(k) + ")");
  }
  ChannelGraph g(k);
  for (int i = 0; i < k; ++i) g.add_channel(i, (i + 1) % k);
  return g;
}

std::vector<int> iota_parties(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

namespace {

std::vector<int> restricted_neighbors(const ChannelGraph& g, int v,
                                      const std::vector<bool>& member) {
  std::vector<int> out;
  for (int n : g.secure_neighbors(v)) {
    if (member[static_cast<std::size_t>(n)]) out.push_back(n);
  }
  return out;
}

TopologyVerdict reject(std::string reason, int vertex) {
  return {false, std::move(reason), vertex};
}

}  // namespace

TopologyVerdict validate_topology(const ChannelGraph& g, const std::vector<int>& participants) {
  std::vector<bool> member(static_cast<std::size_t>(g.size()), false);
  for (int p : participants) {
    if (p < 0 || p >= g.size()) return reject("unknown party", p);
    member[static_cast<std::size_t>(p)] = true;
  }
  if (participants.empty()) return reject("no participants", -1);

  for (int v : participants) {
    const auto deg = restricted_neighbors(g, v, member).size();
    if (deg < 2) {
      return reject("degree-" + std::to_string(deg) + " vertex P" + std::to_string(v + 1), v);
    }
    if (deg > 2) {
      return reject("degree-" + std::to_string(deg) + " vertex P" + std::to_string(v + 1) +
                        " breaks the cycle cover",
                    v);
    }
  }

  // Every vertex has degree two, so each component is a cycle; walk them.
  std::vector<bool> seen(member.size(), false);
  for (int start : participants) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int prev = -1;
    int cur = start;
    int length = 0;
    do {
      seen[static_cast<std::size_t>(cur)] = true;
      ++length;
      const auto nb = restricted_neighbors(g, cur, member);
      const int next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
    } while (cur != start);
    if (length < 3) {
      return reject("cycle of length " + std::to_string(length) + " through P" +
                        std::to_string(start + 1),
                    start);
    }
  }
  return {};
}

TopologyVerdict validate_topology(const ChannelGraph& g) {
  return validate_topology(g, iota_parties(g.size()));
}

std::vector<int> cycle_order(const ChannelGraph& g, const std::vector<int>& participants) {
  const auto verdict = validate_topology(g, participants);
  if (!verdict) throw TopologyError("topology rejected: " + verdict.reason);

  std::vector<bool> member(static_cast<std::size_t>(g.size()), false);
  for (int p : participants) member[static_cast<std::size_t>(p)] = true;

  const int start = participants.front();
  std::vector<int> order{start};
  auto nb = restricted_neighbors(g, start, member);
  int prev = start;
  int cur = std::min(nb[0], nb[1]);
  while (cur != start) {
    order.push_back(cur);
    nb = restricted_neighbors(g, cur, member);
    const int next = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = next;
  }
  if (order.size() != participants.size()) {
    throw TopologyError("protocol needs a single cycle through all " +
                        std::to_string(participants.size()) + " parties");
  }
  return order;
}

std::vector<int> cycle_order(const ChannelGraph& g) { return cycle_order(g, iota_parties(g.size())); }

void require_secure_channels(const ChannelGraph& g,
                             const std::vector<std::pair<int, int>>& declared) {
  for (const auto& [a, b] : declared) {
    if (!g.has_channel(a, b) || g.security(a, b) != Security::Secure) {
      throw TopologyError("missing secure channel P" + std::to_string(a + 1) + "-P" +
                          std::to_string(b + 1));
    }
  }
}

}  // namespace circmpc
