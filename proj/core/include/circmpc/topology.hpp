#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circmpc/errors.hpp"

namespace circmpc {

enum class Capability { Full, Dummy };
enum class Security { Secure, Insecure };

std::string to_string(Security s);

struct Channel {
  int a;
  int b;
  Security security;
};

// Undirected channel graph on parties 0..k-1. Channels are bidirectional;
// self-loops and duplicate channels are rejected at insertion.
class ChannelGraph {
 public:
  ChannelGraph() = default;
  explicit ChannelGraph(int k);

  int size() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<Channel>& channels() const { return channels_; }

  void add_channel(int a, int b, Security security = Security::Secure);
  // Adds the channel unless one already joins a and b.
  void ensure_channel(int a, int b, Security security = Security::Secure);

  bool has_channel(int a, int b) const;
  Security security(int a, int b) const;
  std::vector<int> secure_neighbors(int v) const;
  int secure_degree(int v) const;

 private:
  void check_vertex(int v) const;

  std::vector<Channel> channels_;
  // adjacency_[v] holds (neighbor, channel index)
  std::vector<std::vector<std::pair<int, std::size_t>>> adjacency_;
};

// Secure cycle 0 -> 1 -> ... -> k-1 -> 0.
ChannelGraph build_cycle(int k);

struct TopologyVerdict {
  bool ok = true;
  std::string reason;
  std::optional<int> vertex;

  explicit operator bool() const { return ok; }
};

// Accepts iff the secure subgraph (restricted to `participants` when given)
// is a disjoint union of cycles, each of length >= 3.
TopologyVerdict validate_topology(const ChannelGraph& g);
TopologyVerdict validate_topology(const ChannelGraph& g, const std::vector<int>& participants);

// Ring order of a single secure cycle through `participants`, starting at the
// first participant and stepping to its lower-indexed neighbour. Throws
// TopologyError if the participants do not form exactly one valid cycle.
std::vector<int> cycle_order(const ChannelGraph& g, const std::vector<int>& participants);
std::vector<int> cycle_order(const ChannelGraph& g);

// Protocols with their own star-shaped channel sets validate against a
// declared list instead of the cycle rule.
void require_secure_channels(const ChannelGraph& g,
                             const std::vector<std::pair<int, int>>& declared);

std::vector<int> iota_parties(int k);

}  // namespace circmpc
