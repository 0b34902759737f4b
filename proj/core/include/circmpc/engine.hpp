#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "circmpc/randomness.hpp"
#include "circmpc/ring.hpp"
#include "circmpc/topology.hpp"

namespace circmpc {

inline constexpr int kBroadcast = -1;
inline constexpr int kEavesdropper = -1;

enum class PayloadKind { Element, Index, Token };

std::string to_string(PayloadKind kind);

// One transmission. `to == kBroadcast` is visible to every party and to the
// eavesdropper.
struct Message {
  std::uint64_t seq = 0;
  int from = 0;
  int to = kBroadcast;
  Security security = Security::Secure;
  PayloadKind kind = PayloadKind::Element;
  std::string label;
  Int value = 0;
  std::string token;

  bool is_broadcast() const { return to == kBroadcast; }
  std::string payload_text() const;

  friend bool operator==(const Message&, const Message&) = default;
};

enum class EventKind { Input, Drawn, Derived };

// Something a party knows without it crossing a channel: its inputs, the
// randomness it drew, values it computed. Ordered against messages by
// `before_seq` (the seq of the next message at the time it happened).
struct PrivateEvent {
  int party = 0;
  EventKind kind = EventKind::Input;
  std::string label;
  Int value = 0;
  std::uint64_t before_seq = 0;
};

struct PhaseMark {
  std::string name;
  std::uint64_t seq;  // first message belonging to the phase
};

// Ground truth of a run. Messages are the public record (serialized to
// JSONL); private events stay in memory for view extraction.
struct Transcript {
  std::string protocol;
  nlohmann::json config;  // run config for replay; null when not CLI-driven
  nlohmann::json meta = nlohmann::json::object();  // public protocol metadata
  std::vector<Capability> roster;
  ChannelGraph graph;
  std::vector<Message> messages;
  std::vector<PrivateEvent> events;
  std::vector<PhaseMark> phases;
  std::vector<std::uint64_t> draws;  // per party

  std::optional<std::uint64_t> phase_start(const std::string& name) const;
};

enum class ViewSource { Input, Drawn, Derived, Sent, Received, Broadcast, Overheard };

struct ViewItem {
  ViewSource source;
  std::string label;
  std::string payload;

  friend bool operator==(const ViewItem&, const ViewItem&) = default;
};

// Everything one observer knows about a run, in the order it learned it.
struct View {
  int observer = kEavesdropper;
  std::vector<ViewItem> items;

  // Canonical string form; equal keys <=> equal views.
  std::string key() const;
  std::vector<std::string> labels() const;
  std::optional<std::string> find(const std::string& label) const;
};

// Messages incident to `party`, broadcasts, and the party's private events;
// messages with seq >= `until_seq` are excluded.
View extract_view(const Transcript& t, int party,
                  std::optional<std::uint64_t> until_seq = std::nullopt);
// All insecure-channel messages and broadcasts.
View eavesdropper_view(const Transcript& t, std::optional<std::uint64_t> until_seq = std::nullopt);
// Union of member views, each item tagged with the member index.
View coalition_view(const Transcript& t, const std::vector<int>& members,
                    std::optional<std::uint64_t> until_seq = std::nullopt);

// Single-threaded scheduler for one protocol run. Protocols drive it in their
// narrative order; it enforces channel discipline, gates randomness on party
// capability and records the transcript.
class Session {
 public:
  // Returns the value a (cheating) sender actually transmits in place of the
  // honest one, or nullopt to leave the message untouched.
  using Tamper = std::function<std::optional<Int>(const Message&)>;

  Session(std::string protocol, ChannelGraph graph, std::vector<Capability> roster,
          RandomnessProvider& rng);

  int parties() const { return transcript_.graph.size(); }
  Capability capability(int party) const;
  const ChannelGraph& graph() const { return transcript_.graph; }

  void set_tamper(Tamper tamper) { tamper_ = std::move(tamper); }
  void set_meta(const std::string& key, nlohmann::json value);

  // Private randomness; throws DummyRandomnessError for dummies.
  Int uniform(int party, const Int& lo, const Int& hi, const std::string& label);
  Int noise(int party, const Ring& ring, bool require_unit, const std::string& label);

  void input(int party, const std::string& label, const Int& value);
  void derive(int party, const std::string& label, const Int& value);

  // Point-to-point transmission over an existing channel. Returns the payload
  // the receiver gets.
  Int send(int from, int to, const std::string& label, const Int& value,
           PayloadKind kind = PayloadKind::Element);
  Int broadcast(int from, const std::string& label, const Int& value,
                PayloadKind kind = PayloadKind::Element);
  void announce(int from, const std::string& label, const std::string& token);

  void begin_phase(const std::string& name);
  std::uint64_t next_seq() const { return transcript_.messages.size(); }
  std::uint64_t dummy_draw_attempts() const { return dummy_attempts_; }

  const Transcript& transcript() const { return transcript_; }
  Transcript finish() { return std::move(transcript_); }

 private:
  class PartySource;

  Int deliver(Message msg);
  void check_party(int party) const;

  Transcript transcript_;
  RandomnessProvider& rng_;
  Tamper tamper_;
  std::uint64_t dummy_attempts_ = 0;
};

// Roster with every party Full.
std::vector<Capability> full_roster(int k);

// Per-run knobs shared by every protocol entry point.
struct RunOptions {
  // Empty means the protocol's default roster.
  std::vector<Capability> roster;
  Session::Tamper tamper;
};

}  // namespace circmpc
