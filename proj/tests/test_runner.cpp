#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "circmpc/errors.hpp"
#include "circmpc/runner.hpp"
#include "sample_configs.hpp"

using namespace circmpc;
using circmpc::testing::sample_configs;

namespace {

TranscriptFile reread(const std::string& text) {
  std::istringstream in(text);
  return read_transcript(in);
}

}  // namespace

TEST(Runner, CoversEveryProtocol) {
  std::set<std::string> covered;
  for (const auto& c : sample_configs()) covered.insert(c.at("protocol").get<std::string>());
  const auto names = runnable_protocols();
  EXPECT_EQ(covered, std::set<std::string>(names.begin(), names.end()));
}

TEST(Runner, SumConfig) {
  const auto out = run_config(json::parse(R"({"protocol":"sum","inputs":[3,5,7]})"));
  EXPECT_EQ(out.result.at("sum"), "15");
}

TEST(Runner, ResultsMatchOracles) {
  const auto configs = sample_configs();
  std::map<std::string, json> results;
  for (const auto& c : configs) results[c.at("protocol")] = run_config(c).result;
  EXPECT_EQ(results["rating"]["sum"], "24");
  EXPECT_EQ(results["product"]["product"], "30");
  EXPECT_EQ(results["powers"]["power_sum"], "14");
  EXPECT_EQ(results["symmetric"]["elementary"], json::array({"6", "11", "6"}));
  EXPECT_EQ(results["f1"]["f"], "18");
  EXPECT_EQ(results["f2"]["f"], "1");
  EXPECT_EQ(results["millionaires"]["verdict"], "positive");
  EXPECT_EQ(results["millionaires_bitwise"]["deciding_bit"], 2);
  EXPECT_EQ(results["commit3"]["recovered"][2], json::array({"3", "4", "5"}));
  EXPECT_EQ(results["commit2"]["recovered"][0], json::array({"3", "4"}));
  EXPECT_EQ(results["ot"]["retrieved"], json::array({"10", "30"}));
  EXPECT_EQ(results["protocol1"]["hands"].size(), 3U);
  EXPECT_EQ(results["dealer"]["residual"].size(), 6U);
}

TEST(Runner, Errors) {
  EXPECT_THROW(run_config(json::parse(R"({"protocol":"nope"})")), ConfigError);
  EXPECT_THROW(run_config(json::parse(R"({"inputs":[1]})")), ConfigError);
  EXPECT_THROW(run_config(json::parse(R"({"protocol":"sum","inputs":"x"})")), ConfigError);
  EXPECT_THROW(run_config(json::array()), ConfigError);
  EXPECT_THROW(run_config(json::parse(
                   R"({"protocol":"sum","inputs":[1,2,3],"topology":{"k":3,"edges":[[0,1],[1,2]]}})")),
               TopologyError);
}

TEST(Runner, ExitCodes) {
  EXPECT_EQ(exit_code_for(ConfigError("x")), kExitSchema);
  EXPECT_EQ(exit_code_for(TopologyError("x")), kExitTopology);
  EXPECT_EQ(exit_code_for(CheatDetected(0, 1, "x")), kExitCheat);
  EXPECT_EQ(exit_code_for(ProtocolError("x")), kExitFailure);
}

TEST(Runner, TamperInRevealIsCaught) {
  auto c = json::parse(R"({"protocol":"commit3","inputs":[3,4,5],"ring":"Zm:10","seed":1})");
  // Commit sends six messages; the first reveal message is seq 6.
  c["tamper"] = json::array({{{"seq", 6}, {"value", "9"}}});
  try {
    run_config(c);
    FAIL();
  } catch (const CheatDetected& e) {
    EXPECT_EQ(exit_code_for(e), kExitCheat);
  }
}

TEST(Runner, DeterministicAndReplayable) {
  for (const auto& c : sample_configs()) {
    const std::string a = transcript_text(run_config(c).transcript);
    const std::string b = transcript_text(run_config(c).transcript);
    ASSERT_EQ(a, b) << c.dump();
    const auto report = replay_transcript(reread(a));
    EXPECT_TRUE(report.verified) << c.dump() << ": " << report.detail;
  }
}

TEST(Runner, FlippedPayloadPinpointed) {
  for (const auto& c : sample_configs()) {
    auto t = run_config(c).transcript;
    ASSERT_FALSE(t.messages.empty());
    for (std::size_t i : {std::size_t{0}, t.messages.size() / 2, t.messages.size() - 1}) {
      auto bad = t;
      auto& m = bad.messages[i];
      if (m.kind == PayloadKind::Token) {
        m.token += "?";
      } else {
        m.value += 1;
      }
      const auto report = replay_transcript(reread(transcript_text(bad)));
      EXPECT_FALSE(report.verified);
      EXPECT_EQ(report.divergent_seq, i) << c.dump();
    }
  }
}

TEST(Runner, ReplayWithoutConfigIsAnError) {
  auto t = run_config(sample_configs()[0]).transcript;
  t.config = nullptr;
  EXPECT_THROW(replay_transcript(reread(transcript_text(t))), ConfigError);
}

TEST(Ledger, JsonRoundTrip) {
  const auto out = run_config(json::parse(R"({"protocol":"commit3","inputs":[1,0,1],"ring":"Zm:2","reveal":false})"));
  const json j = out.result.at("ledger");
  CommitmentLedger ledger = ledger_from_json(j);
  EXPECT_EQ(to_json(ledger), j);
  SeededRandomness rng(0);
  const auto r = decommit3(ledger, rng);
  for (const auto& row : r.recovered) EXPECT_EQ(row, (std::vector<Int>{1, 0, 1}));
  EXPECT_THROW(ledger_from_json(json::object()), ConfigError);
}

TEST(Transcripts, AppendShiftsSequence) {
  Transcript a, b;
  a.messages.resize(2);
  a.messages[1].seq = 1;
  b.messages.resize(1);
  b.phases.push_back({"x", 0});
  a.draws = {1, 2};
  b.draws = {3, 4};
  append_transcript(a, b);
  ASSERT_EQ(a.messages.size(), 3U);
  EXPECT_EQ(a.messages[2].seq, 2U);
  EXPECT_EQ(a.phases.back().seq, 2U);
  EXPECT_EQ(a.draws, (std::vector<std::uint64_t>{4, 6}));
}
