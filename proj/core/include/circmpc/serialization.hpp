#pragma once

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "circmpc/engine.hpp"

namespace circmpc {

using nlohmann::json;

// Integers travel as decimal strings; plain JSON numbers are accepted on input.
json int_to_json(const Int& x);
Int int_from_json(const json& j);
std::vector<Int> ints_from_json(const json& j);
json ints_to_json(const std::vector<Int>& xs);

// {"ring": "Z", "noise_bound": B} or {"ring": "Zm", "m": M}
RingSpec ring_from_json(const json& j);
json to_json(const RingSpec& spec);
// Shorthand used by CLI flags: "Z", "Z:1000", "Zm:7".
RingSpec ring_from_flag(const std::string& text);

// {"cycle": k} or {"k": k, "edges": [[i, j, "secure"|"insecure"], ...]}
ChannelGraph graph_from_json(const json& j);
json to_json(const ChannelGraph& g);

json to_json(const Message& m);
Message message_from_json(const json& j);
// One canonical line per message; byte-stable across runs.
std::string message_line(const Message& m);

// Line-delimited transcript: a {"meta": ...} header, one message per line,
// and an {"end": ...} trailer whose absence marks a truncated file.
void write_transcript(std::ostream& out, const Transcript& t);
std::string transcript_text(const Transcript& t);

struct TranscriptFile {
  json header;
  std::vector<Message> messages;
  std::vector<std::string> lines;  // raw message lines
  json trailer;
};

TranscriptFile read_transcript(std::istream& in);

}  // namespace circmpc
