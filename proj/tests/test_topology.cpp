#include <gtest/gtest.h>

#include <algorithm>

#include "circmpc/errors.hpp"
#include "circmpc/topology.hpp"

using namespace circmpc;

namespace {

std::vector<std::pair<int, int>> edges_of(const ChannelGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& c : g.channels()) out.emplace_back(std::min(c.a, c.b), std::max(c.a, c.b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Cycle, Triangle) {
  EXPECT_EQ(edges_of(build_cycle(3)), (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Cycle, FiveGon) {
  const auto g = build_cycle(5);
  EXPECT_EQ(g.channels().size(), 5U);
  for (int v = 0; v < 5; ++v) EXPECT_EQ(g.secure_degree(v), 2);
}

TEST(Cycle, TooSmall) {
  EXPECT_THROW(build_cycle(2), TopologyError);
  EXPECT_THROW(build_cycle(0), TopologyError);
}

TEST(Validate, AcceptsTriangle) { EXPECT_TRUE(validate_topology(build_cycle(3))); }

TEST(Validate, RejectsPath) {
  ChannelGraph g(3);
  g.add_channel(0, 1);
  g.add_channel(1, 2);
  const auto v = validate_topology(g);
  EXPECT_FALSE(v);
  EXPECT_NE(v.reason.find("degree-1"), std::string::npos);
  EXPECT_EQ(v.vertex, 0);
}

TEST(Validate, AcceptsDisjointTriangles) {
  ChannelGraph g(6);
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) g.add_channel(base + i, base + (i + 1) % 3);
  }
  EXPECT_TRUE(validate_topology(g));
  // A single-cycle protocol still refuses it.
  EXPECT_THROW(cycle_order(g), TopologyError);
}

TEST(Validate, ExtraEdgesRejected) {
  ChannelGraph tri = build_cycle(3);
  EXPECT_THROW(tri.add_channel(0, 2), TopologyError);

  ChannelGraph sq = build_cycle(4);
  sq.add_channel(0, 2);
  const auto v = validate_topology(sq);
  EXPECT_FALSE(v);
  EXPECT_NE(v.reason.find("degree-3"), std::string::npos);
}

TEST(Validate, InsecureEdgesDoNotCount) {
  ChannelGraph g(3);
  g.add_channel(0, 1);
  g.add_channel(1, 2);
  g.add_channel(2, 0, Security::Insecure);
  EXPECT_FALSE(validate_topology(g));
}

TEST(Validate, SubsetOfParticipants) {
  // Rating graph shape: a cycle on 0..2 plus spokes to a boss at 3.
  ChannelGraph g = build_cycle(3);
  ChannelGraph h(4);
  for (const auto& c : g.channels()) h.add_channel(c.a, c.b);
  for (int i = 0; i < 3; ++i) h.add_channel(i, 3);
  EXPECT_FALSE(validate_topology(h));
  EXPECT_TRUE(validate_topology(h, {0, 1, 2}));
  EXPECT_EQ(cycle_order(h, {0, 1, 2}), (std::vector<int>{0, 1, 2}));
}

TEST(CycleOrder, FollowsRing) {
  ChannelGraph g(4);
  g.add_channel(0, 2);
  g.add_channel(2, 1);
  g.add_channel(1, 3);
  g.add_channel(3, 0);
  EXPECT_EQ(cycle_order(g), (std::vector<int>{0, 2, 1, 3}));
}

TEST(Channels, SecureRequirement) {
  ChannelGraph g(3);
  g.add_channel(0, 1, Security::Insecure);
  EXPECT_THROW(require_secure_channels(g, {{0, 1}}), TopologyError);
  EXPECT_THROW(require_secure_channels(g, {{1, 2}}), TopologyError);
  EXPECT_THROW(g.add_channel(1, 1), TopologyError);
  EXPECT_THROW(g.add_channel(0, 5), TopologyError);
}
