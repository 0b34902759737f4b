#pragma once

#include <optional>
#include <string>

#include "circmpc/commitment.hpp"
#include "circmpc/serialization.hpp"

namespace circmpc {

// Result JSON plus the full transcript of one config-driven run.
struct RunOutput {
  json result;
  Transcript transcript;
};

// Config keys: "protocol", "seed" (default 0), "ring" (see ring_from_json),
// "topology" (see graph_from_json; each protocol has a default), "tamper"
// ([{"seq": s, "value": v}] rewrites payloads in flight) and protocol fields
// such as "inputs", "exponent", "messages", "indices", "cards", "players".
RunOutput run_config(const json& config);

// Names accepted in "protocol".
std::vector<std::string> runnable_protocols();

struct ReplayReport {
  bool verified = false;
  std::optional<std::uint64_t> divergent_seq;
  std::string detail;
};

// Re-runs the header config and compares every message line.
ReplayReport replay_transcript(const TranscriptFile& file);

json to_json(const CommitmentLedger& ledger);
CommitmentLedger ledger_from_json(const json& j);

// Appends `tail` to `head`, shifting its sequence numbers.
void append_transcript(Transcript& head, Transcript tail);

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitSchema = 2,
  kExitTopology = 3,
  kExitCheat = 4,
  kExitDivergence = 5,
};

// Maps the exception hierarchy onto process exit codes.
int exit_code_for(const std::exception& ex);

}  // namespace circmpc
