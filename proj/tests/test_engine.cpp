#include <gtest/gtest.h>

#include <sstream>

#include "circmpc/arith.hpp"
#include "circmpc/errors.hpp"
#include "circmpc/serialization.hpp"
#include "support.hpp"

using namespace circmpc;

namespace {

const std::vector<Int> kInputs{1, 2, 3};

Transcript sum_run(std::uint64_t seed) {
  SeededRandomness rng(seed);
  return secure_sum(Ring(RingSpec::integers()), kInputs, build_cycle(3), rng).transcript;
}

}  // namespace

TEST(Session, SameSeedSameTranscript) {
  EXPECT_EQ(transcript_text(sum_run(7)), transcript_text(sum_run(7)));
  EXPECT_NE(transcript_text(sum_run(7)), transcript_text(sum_run(8)));
}

TEST(Session, PathGraphRejected) {
  ChannelGraph path(3);
  path.add_channel(0, 1);
  path.add_channel(1, 2);
  SeededRandomness rng(1);
  EXPECT_THROW(secure_sum(Ring(RingSpec::integers()), kInputs, path, rng), TopologyError);
}

TEST(Session, DummyInSumFaultsOnFirstNoise) {
  SeededRandomness rng(1);
  RunOptions opts;
  opts.roster = {Capability::Full, Capability::Dummy, Capability::Full};
  try {
    secure_sum(Ring(RingSpec::integers()), kInputs, build_cycle(3), rng, opts);
    FAIL() << "dummy drew randomness";
  } catch (const DummyRandomnessError& e) {
    EXPECT_EQ(e.party(), 1);
  }
}

TEST(Session, SendNeedsChannel) {
  SeededRandomness rng(1);
  ChannelGraph g(3);
  g.add_channel(0, 1);
  Session s("t", g, full_roster(3), rng);
  EXPECT_NO_THROW(s.send(0, 1, "x", 5));
  EXPECT_THROW(s.send(0, 2, "x", 5), TopologyError);
  EXPECT_EQ(s.transcript().messages.size(), 1U);
}

TEST(Session, TamperRewritesDelivery) {
  SeededRandomness rng(1);
  Session s("t", build_cycle(3), full_roster(3), rng);
  s.set_tamper([](const Message& m) -> std::optional<Int> {
    if (m.seq == 1) return Int(42);
    return std::nullopt;
  });
  EXPECT_EQ(s.send(0, 1, "a", 5), 5);
  EXPECT_EQ(s.send(1, 2, "b", 6), 42);
  EXPECT_EQ(s.transcript().messages[1].value, 42);
}

TEST(Session, DrawsCountedPerParty) {
  const auto t = sum_run(3);
  ASSERT_EQ(t.draws.size(), 3U);
  for (auto d : t.draws) EXPECT_EQ(d, 1U);
}

TEST(View, MiddlePartyOfSum) {
  const auto t = sum_run(7);
  const View v = extract_view(t, 1);
  std::vector<std::string> msgs;
  for (const auto& item : v.items) {
    if (item.source == ViewSource::Received || item.source == ViewSource::Sent) msgs.push_back(item.label);
  }
  EXPECT_EQ(msgs, (std::vector<std::string>{"partial1@P1", "partial2@P3"}));
  EXPECT_TRUE(v.find("S@P1"));
  EXPECT_TRUE(v.find("n02@P2"));
  EXPECT_TRUE(v.find("n03@P3"));
  EXPECT_FALSE(v.find("n1"));
  EXPECT_EQ(v.find("n2"), "2");
}

TEST(View, NonParticipantRejected) {
  const auto t = sum_run(7);
  EXPECT_THROW(extract_view(t, 3), ProtocolError);
}

TEST(View, EavesdropperSeesOnlyBroadcastsOnSecureCycle) {
  const auto t = sum_run(7);
  const View v = eavesdropper_view(t);
  ASSERT_EQ(v.items.size(), 3U);
  for (const auto& item : v.items) EXPECT_EQ(item.source, ViewSource::Broadcast);
  EXPECT_EQ(v.items[0].label, "S@P1");
}

TEST(View, UntilSeqCutsTheView) {
  const auto t = sum_run(7);
  const auto publish = t.phase_start("publish");
  ASSERT_TRUE(publish);
  EXPECT_EQ(*publish, 3U);
  const View v = extract_view(t, 1, publish);
  EXPECT_FALSE(v.find("S@P1"));
  EXPECT_TRUE(v.find("partial1@P1"));
}

TEST(View, CoalitionMergesMembers) {
  const auto t = sum_run(7);
  const View v = coalition_view(t, {0, 1});
  EXPECT_TRUE(v.find("P1|n1"));
  EXPECT_TRUE(v.find("P2|n2"));
  EXPECT_EQ(v.items.size(), extract_view(t, 0).items.size() + extract_view(t, 1).items.size());
}

TEST(Serialization, TranscriptRoundTrip) {
  const auto t = sum_run(11);
  std::stringstream io;
  write_transcript(io, t);
  const TranscriptFile f = read_transcript(io);
  ASSERT_EQ(f.messages.size(), t.messages.size());
  for (std::size_t i = 0; i < t.messages.size(); ++i) EXPECT_EQ(f.messages[i], t.messages[i]);
  EXPECT_EQ(f.header.at("protocol"), "sum");
  EXPECT_EQ(f.trailer.at("messages"), t.messages.size());
}

TEST(Serialization, TruncationDetected) {
  const std::string text = transcript_text(sum_run(11));
  const auto last_line = text.rfind('\n', text.size() - 2);
  std::istringstream no_trailer(text.substr(0, last_line + 1));
  EXPECT_THROW(read_transcript(no_trailer), ConfigError);
  std::istringstream cut(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_transcript(cut), ConfigError);
}

TEST(Serialization, BigIntegersAsStrings) {
  const Int big("340282366920938463463374607431768211457");
  const json j = int_to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(int_from_json(j), big);
  EXPECT_EQ(int_from_json(json(-5)), -5);
  EXPECT_THROW(int_from_json(json(1.5)), ConfigError);
}

TEST(Serialization, RingsAndGraphs) {
  EXPECT_EQ(ring_from_flag("Zm:7"), RingSpec::modular(7));
  EXPECT_EQ(ring_from_flag("Z"), RingSpec::integers());
  EXPECT_EQ(ring_from_json(to_json(RingSpec::modular(251))), RingSpec::modular(251));
  EXPECT_THROW(ring_from_flag("Q"), ConfigError);
  const auto g = graph_from_json(json{{"cycle", 4}});
  EXPECT_EQ(graph_from_json(to_json(g)).channels().size(), 4U);
}
