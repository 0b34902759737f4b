#include "circmpc/engine.hpp"

#include <algorithm>

namespace circmpc {

std::string to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::Element: return "element";
    case PayloadKind::Index: return "index";
    case PayloadKind::Token: return "token";
  }
  return "element";
}

std::string Message::payload_text() const {
  return kind == PayloadKind::Token ? token : to_string(value);
}

std::optional<std::uint64_t> Transcript::phase_start(const std::string& name) const {
  for (const auto& p : phases) {
    if (p.name == name) return p.seq;
  }
  return std::nullopt;
}

namespace {

const char* source_tag(ViewSource s) {
  switch (s) {
    case ViewSource::Input: return "in";
    case ViewSource::Drawn: return "rnd";
    case ViewSource::Derived: return "calc";
    case ViewSource::Sent: return "sent";
    case ViewSource::Received: return "recv";
    case ViewSource::Broadcast: return "bcast";
    case ViewSource::Overheard: return "heard";
  }
  return "?";
}

ViewSource to_view_source(EventKind kind) {
  switch (kind) {
    case EventKind::Input: return ViewSource::Input;
    case EventKind::Drawn: return ViewSource::Drawn;
    case EventKind::Derived: return ViewSource::Derived;
  }
  return ViewSource::Derived;
}

std::string peer_label(const Message& m, int observer) {
  const int peer = m.from == observer ? m.to : m.from;
  return m.label + "@P" + std::to_string(peer + 1);
}

bool within(std::uint64_t seq, std::optional<std::uint64_t> until) {
  return !until || seq < *until;
}

}  // namespace

std::string View::key() const {
  std::string out;
  for (const auto& item : items) {
    out += source_tag(item.source);
    out += ':';
    out += item.label;
    out += '=';
    out += item.payload;
    out += ';';
  }
  return out;
}

std::vector<std::string> View::labels() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.label);
  return out;
}

std::optional<std::string> View::find(const std::string& label) const {
  for (const auto& item : items) {
    if (item.label == label) return item.payload;
  }
  return std::nullopt;
}

View extract_view(const Transcript& t, int party, std::optional<std::uint64_t> until_seq) {
  if (party < 0 || party >= t.graph.size()) {
    throw ProtocolError("P" + std::to_string(party + 1) + " did not participate in " + t.protocol);
  }
  View view;
  view.observer = party;
  std::size_t ev = 0;
  // Events stamped with before_seq == s happened before message s.
  auto flush_events = [&](std::uint64_t upto) {
    for (; ev < t.events.size() && t.events[ev].before_seq <= upto; ++ev) {
      const auto& e = t.events[ev];
      if (e.party != party || !within(e.before_seq, until_seq)) continue;
      view.items.push_back({to_view_source(e.kind), e.label, to_string(e.value)});
    }
  };
  for (const auto& m : t.messages) {
    if (!within(m.seq, until_seq)) break;
    flush_events(m.seq);
    if (m.is_broadcast()) {
      view.items.push_back({ViewSource::Broadcast, m.label + "@P" + std::to_string(m.from + 1),
                            m.payload_text()});
    } else if (m.from == party) {
      view.items.push_back({ViewSource::Sent, peer_label(m, party), m.payload_text()});
    } else if (m.to == party) {
      view.items.push_back({ViewSource::Received, peer_label(m, party), m.payload_text()});
    }
  }
  flush_events(until_seq ? *until_seq : t.messages.size());
  return view;
}

View eavesdropper_view(const Transcript& t, std::optional<std::uint64_t> until_seq) {
  View view;
  view.observer = kEavesdropper;
  for (const auto& m : t.messages) {
    if (!within(m.seq, until_seq)) break;
    if (m.is_broadcast()) {
      view.items.push_back({ViewSource::Broadcast, m.label + "@P" + std::to_string(m.from + 1),
                            m.payload_text()});
    } else if (m.security == Security::Insecure) {
      view.items.push_back({ViewSource::Overheard,
                            m.label + "@P" + std::to_string(m.from + 1) + ">P" +
                                std::to_string(m.to + 1),
                            m.payload_text()});
    }
  }
  return view;
}

View coalition_view(const Transcript& t, const std::vector<int>& members,
                    std::optional<std::uint64_t> until_seq) {
  View view;
  view.observer = members.empty() ? kEavesdropper : members.front();
  for (int p : members) {
    const auto v = extract_view(t, p, until_seq);
    for (auto item : v.items) {
      item.label = "P" + std::to_string(p + 1) + "|" + item.label;
      view.items.push_back(std::move(item));
    }
  }
  return view;
}

std::vector<Capability> full_roster(int k) {
  return std::vector<Capability>(static_cast<std::size_t>(k), Capability::Full);
}

class Session::PartySource : public RandomSource {
 public:
  PartySource(Session& s, int party) : session_(s), party_(party) {}
  Int uniform(const Int& lo, const Int& hi) override {
    session_.check_party(party_);
    ++session_.transcript_.draws[static_cast<std::size_t>(party_)];
    if (session_.capability(party_) == Capability::Dummy) {
      ++session_.dummy_attempts_;
      throw DummyRandomnessError(party_);
    }
    return session_.rng_.draw(party_, lo, hi);
  }

 private:
  Session& session_;
  int party_;
};

Session::Session(std::string protocol, ChannelGraph graph, std::vector<Capability> roster,
                 RandomnessProvider& rng)
    : rng_(rng) {
  transcript_.protocol = std::move(protocol);
  if (roster.empty()) roster = full_roster(graph.size());
  if (static_cast<int>(roster.size()) != graph.size()) {
    throw ProtocolError("roster size does not match party count");
  }
  if (std::none_of(roster.begin(), roster.end(),
                   [](Capability c) { return c == Capability::Full; })) {
    throw ProtocolError("at least one party must be able to generate randomness");
  }
  transcript_.draws.assign(roster.size(), 0);
  transcript_.roster = std::move(roster);
  transcript_.graph = std::move(graph);
}

Capability Session::capability(int party) const {
  check_party(party);
  return transcript_.roster[static_cast<std::size_t>(party)];
}

void Session::check_party(int party) const {
  if (party < 0 || party >= parties()) {
    throw ProtocolError("unknown party P" + std::to_string(party + 1));
  }
}

void Session::set_meta(const std::string& key, nlohmann::json value) {
  transcript_.meta[key] = std::move(value);
}

Int Session::uniform(int party, const Int& lo, const Int& hi, const std::string& label) {
  PartySource src(*this, party);
  Int v = src.uniform(lo, hi);
  transcript_.events.push_back({party, EventKind::Drawn, label, v, next_seq()});
  return v;
}

Int Session::noise(int party, const Ring& ring, bool require_unit, const std::string& label) {
  PartySource src(*this, party);
  Int v = sample_noise(ring, src, require_unit);
  transcript_.events.push_back({party, EventKind::Drawn, label, v, next_seq()});
  return v;
}

void Session::input(int party, const std::string& label, const Int& value) {
  check_party(party);
  transcript_.events.push_back({party, EventKind::Input, label, value, next_seq()});
}

void Session::derive(int party, const std::string& label, const Int& value) {
  check_party(party);
  transcript_.events.push_back({party, EventKind::Derived, label, value, next_seq()});
}

Int Session::deliver(Message msg) {
  msg.seq = next_seq();
  if (tamper_ && msg.kind != PayloadKind::Token) {
    if (auto replaced = tamper_(msg)) msg.value = *replaced;
  }
  Int delivered = msg.value;
  transcript_.messages.push_back(std::move(msg));
  return delivered;
}

Int Session::send(int from, int to, const std::string& label, const Int& value, PayloadKind kind) {
  check_party(from);
  check_party(to);
  if (!transcript_.graph.has_channel(from, to)) {
    throw TopologyError("no channel P" + std::to_string(from + 1) + "->P" +
                        std::to_string(to + 1) + " for " + label);
  }
  Message msg;
  msg.from = from;
  msg.to = to;
  msg.security = transcript_.graph.security(from, to);
  msg.kind = kind;
  msg.label = label;
  msg.value = value;
  return deliver(std::move(msg));
}

Int Session::broadcast(int from, const std::string& label, const Int& value, PayloadKind kind) {
  check_party(from);
  Message msg;
  msg.from = from;
  msg.to = kBroadcast;
  msg.security = Security::Insecure;
  msg.kind = kind;
  msg.label = label;
  msg.value = value;
  return deliver(std::move(msg));
}

void Session::announce(int from, const std::string& label, const std::string& token) {
  check_party(from);
  Message msg;
  msg.from = from;
  msg.to = kBroadcast;
  msg.security = Security::Insecure;
  msg.kind = PayloadKind::Token;
  msg.label = label;
  msg.token = token;
  deliver(std::move(msg));
}

void Session::begin_phase(const std::string& name) {
  transcript_.phases.push_back({name, next_seq()});
}

}  // namespace circmpc
