#include "circmpc/serialization.hpp"

#include <sstream>

namespace circmpc {

json int_to_json(const Int& x) { return to_string(x); }

Int int_from_json(const json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  throw ConfigError("expected an integer (number or decimal string), got " + j.dump());
}

std::vector<Int> ints_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of integers, got " + j.dump());
  std::vector<Int> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

json ints_to_json(const std::vector<Int>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(int_to_json(x));
  return out;
}

RingSpec ring_from_json(const json& j) {
  if (j.is_string()) return ring_from_flag(j.get<std::string>());
  if (!j.is_object() || !j.contains("ring")) throw ConfigError("ring spec needs a \"ring\" field");
  const auto kind = j.at("ring").get<std::string>();
  if (kind == "Z") {
    return RingSpec::integers(j.contains("noise_bound") ? int_from_json(j.at("noise_bound"))
                                                        : Int(kDefaultNoiseBound));
  }
  if (kind == "Zm") {
    if (!j.contains("m")) throw ConfigError("ring Zm needs \"m\"");
    return RingSpec::modular(int_from_json(j.at("m")));
  }
  throw ConfigError("unknown ring kind '" + kind + "'");
}

json to_json(const RingSpec& spec) {
  if (spec.is_modular()) return {{"ring", "Zm"}, {"m", int_to_json(spec.modulus)}};
  return {{"ring", "Z"}, {"noise_bound", int_to_json(spec.noise_bound)}};
}

RingSpec ring_from_flag(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "Z") return tail.empty() ? RingSpec::integers() : RingSpec::integers(parse_int(tail));
  if (head == "Zm") {
    if (tail.empty()) throw ConfigError("ring Zm needs a modulus, e.g. Zm:7");
    return RingSpec::modular(parse_int(tail));
  }
  throw ConfigError("unknown ring '" + text + "'");
}

ChannelGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("topology must be an object");
  try {
    if (j.contains("cycle")) return build_cycle(j.at("cycle").get<int>());
    if (!j.contains("k") || !j.contains("edges")) {
      throw ConfigError("topology needs {\"cycle\": k} or {\"k\": k, \"edges\": [...]}");
    }
    ChannelGraph g(j.at("k").get<int>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2) throw ConfigError("edge must be [i, j, security]");
      Security sec = Security::Secure;
      if (e.size() > 2) {
        const auto s = e.at(2).get<std::string>();
        if (s == "insecure") {
          sec = Security::Insecure;
        } else if (s != "secure") {
          throw ConfigError("edge security must be secure|insecure");
        }
      }
      g.add_channel(e.at(0).get<int>(), e.at(1).get<int>(), sec);
    }
    return g;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed topology: ") + ex.what());
  }
}

json to_json(const ChannelGraph& g) {
  json edges = json::array();
  for (const auto& c : g.channels()) edges.push_back({c.a, c.b, to_string(c.security)});
  return {{"k", g.size()}, {"edges", edges}};
}

json to_json(const Message& m) {
  // nlohmann's default object is ordered by key, which keeps lines stable.
  json j;
  j["seq"] = m.seq;
  j["from"] = m.from;
  j["to"] = m.is_broadcast() ? json("broadcast") : json(m.to);
  j["security"] = to_string(m.security);
  j["payload_kind"] = to_string(m.kind);
  j["label"] = m.label;
  j["payload"] = m.payload_text();
  return j;
}

Message message_from_json(const json& j) {
  try {
    Message m;
    m.seq = j.at("seq").get<std::uint64_t>();
    m.from = j.at("from").get<int>();
    const auto& to = j.at("to");
    m.to = to.is_string() ? kBroadcast : to.get<int>();
    m.security = j.at("security").get<std::string>() == "secure" ? Security::Secure
                                                                 : Security::Insecure;
    const auto kind = j.at("payload_kind").get<std::string>();
    m.label = j.at("label").get<std::string>();
    const auto payload = j.at("payload").get<std::string>();
    if (kind == "token") {
      m.kind = PayloadKind::Token;
      m.token = payload;
    } else {
      m.kind = kind == "index" ? PayloadKind::Index : PayloadKind::Element;
      m.value = parse_int(payload);
    }
    return m;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed message: ") + ex.what());
  }
}

std::string message_line(const Message& m) { return to_json(m).dump(); }

void write_transcript(std::ostream& out, const Transcript& t) {
  json roster = json::array();
  for (auto c : t.roster) roster.push_back(c == Capability::Full ? "full" : "dummy");
  json header = {{"meta",
                  {{"protocol", t.protocol},
                   {"config", t.config},
                   {"topology", to_json(t.graph)},
                   {"roster", roster},
                   {"public", t.meta}}}};
  out << header.dump() << '\n';
  for (const auto& m : t.messages) out << message_line(m) << '\n';
  json trailer = {{"end", {{"messages", t.messages.size()}, {"draws", t.draws}}}};
  out << trailer.dump() << '\n';
}

std::string transcript_text(const Transcript& t) {
  std::ostringstream out;
  write_transcript(out, t);
  return out.str();
}

TranscriptFile read_transcript(std::istream& in) {
  TranscriptFile file;
  std::string line;
  bool have_header = false;
  bool have_trailer = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (have_trailer) throw ConfigError("content after transcript trailer at line " + std::to_string(lineno));
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw ConfigError("unparseable transcript line " + std::to_string(lineno) +
                        " (truncated or corrupt file)");
    }
    if (!have_header) {
      if (!j.contains("meta")) throw ConfigError("transcript lacks a meta header");
      file.header = j.at("meta");
      have_header = true;
    } else if (j.contains("end")) {
      file.trailer = j.at("end");
      have_trailer = true;
    } else {
      file.messages.push_back(message_from_json(j));
      file.lines.push_back(line);
    }
  }
  if (!have_header) throw ConfigError("empty transcript");
  if (!have_trailer) throw ConfigError("transcript is truncated (no end marker)");
  if (file.trailer.value("messages", std::size_t{0}) != file.messages.size()) {
    throw ConfigError("transcript is truncated (message count mismatch)");
  }
  return file;
}

}  // namespace circmpc
