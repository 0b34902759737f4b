#include "circmpc/runner.hpp"

#include <map>

#include "circmpc/arith.hpp"
#include "circmpc/poker.hpp"
#include "circmpc/secret_sharing.hpp"

namespace circmpc {

namespace {

json ints(const std::vector<Int>& xs) { return ints_to_json(xs); }

json hands_json(const std::vector<std::vector<int>>& hands) {
  json out = json::array();
  for (const auto& h : hands) out.push_back(h);
  return out;
}

Session::Tamper tamper_from(const json& config, std::uint64_t offset) {
  if (!config.contains("tamper")) return {};
  std::map<std::uint64_t, Int> edits;
  for (const auto& e : config.at("tamper")) {
    edits[e.at("seq").get<std::uint64_t>()] = int_from_json(e.at("value"));
  }
  return [edits, offset](const Message& m) -> std::optional<Int> {
    auto it = edits.find(m.seq + offset);
    if (it == edits.end()) return std::nullopt;
    return it->second;
  };
}

std::vector<Capability> roster_from(const json& config) {
  std::vector<Capability> out;
  if (!config.contains("roster")) return out;
  for (const auto& r : config.at("roster")) {
    const auto s = r.get<std::string>();
    if (s == "full") {
      out.push_back(Capability::Full);
    } else if (s == "dummy") {
      out.push_back(Capability::Dummy);
    } else {
      throw ConfigError("roster entries must be full|dummy");
    }
  }
  return out;
}

class Runner {
 public:
  explicit Runner(const json& config)
      : config_(config),
        protocol_(config.at("protocol").get<std::string>()),
        rng_(config.value("seed", std::uint64_t{0})),
        ring_(config.contains("ring") ? ring_from_json(config.at("ring")) : RingSpec::integers()) {
    opts_.tamper = tamper_from(config, 0);
    opts_.roster = roster_from(config);
  }

  RunOutput run() {
    RunOutput out = dispatch();
    out.transcript.config = config_;
    out.result["protocol"] = protocol_;
    return out;
  }

 private:
  ChannelGraph topology(ChannelGraph fallback) const {
    return config_.contains("topology") ? graph_from_json(config_.at("topology")) : fallback;
  }
  std::vector<Int> inputs() const { return ints_from_json(config_.at("inputs")); }
  int count(const char* key) const { return config_.at(key).get<int>(); }
  int count(const char* key, int fallback) const { return config_.value(key, fallback); }
  const Int& input_at(const std::vector<Int>& in, std::size_t i) const {
    if (i >= in.size()) throw ConfigError("protocol needs " + std::to_string(i + 1) + " inputs");
    return in[i];
  }
  static int kof(const std::vector<Int>& in) { return static_cast<int>(in.size()); }

  RunOutput dispatch();
  RunOutput commit(bool three);
  RunOutput commit_cycle();

  const json& config_;
  std::string protocol_;
  SeededRandomness rng_;
  Ring ring_;
  RunOptions opts_;
};

UnaryFunction named_function(const std::string& name) {
  if (name == "square") return [](const Int& x) { return Int(x * x); };
  if (name == "cube") return [](const Int& x) { return Int(x * x * x); };
  if (name == "identity") return [](const Int& x) { return x; };
  if (name == "zero") return [](const Int&) { return Int(0); };
  throw ConfigError("unknown g '" + name + "' (square|cube|identity|zero)");
}

RunOutput Runner::commit(bool three) {
  const auto in = inputs();
  const bool reveal = config_.value("reveal", true);
  CommitResult c = three ? commit3(ring_, input_at(in, 0), input_at(in, 1), input_at(in, 2),
                                   topology(build_cycle(3)), rng_, opts_)
                         : commit2_dummy(ring_, input_at(in, 0), input_at(in, 1),
                                         topology(build_dummy_triangle()), rng_, opts_);
  RunOutput out;
  out.transcript = std::move(c.transcript);
  if (reveal) {
    RunOptions ropts = opts_;
    ropts.tamper = tamper_from(config_, out.transcript.messages.size());
    RevealResult r = three ? decommit3(c.ledger, rng_, ropts) : decommit2_dummy(c.ledger, rng_, ropts);
    json rec = json::array();
    for (const auto& row : r.recovered) rec.push_back(ints(row));
    out.result["recovered"] = rec;
    append_transcript(out.transcript, std::move(r.transcript));
  }
  out.result["ledger"] = to_json(c.ledger);
  return out;
}

RunOutput Runner::commit_cycle() {
  const auto in = inputs();
  CommitResult c = commitk(ring_, in, topology(build_cycle(kof(in))), rng_, opts_);
  RunOutput out;
  out.transcript = std::move(c.transcript);
  if (config_.value("reveal", true)) {
    RunOptions ropts = opts_;
    ropts.tamper = tamper_from(config_, out.transcript.messages.size());
    RevealResult r = decommitk(c.ledger, rng_, ropts);
    json rec = json::array();
    for (const auto& row : r.recovered) rec.push_back(ints(row));
    out.result["recovered"] = rec;
    append_transcript(out.transcript, std::move(r.transcript));
  }
  out.result["ledger"] = to_json(c.ledger);
  return out;
}

RunOutput Runner::dispatch() {
  const std::string& p = protocol_;
  RunOutput out;
  auto take = [&](auto&& o) -> decltype(auto) {
    out.transcript = std::move(o.transcript);
    return std::move(o.result);
  };
  if (p == "sum") {
    const auto in = inputs();
    out.result["sum"] = int_to_json(take(secure_sum(ring_, in, topology(build_cycle(kof(in))), rng_, opts_)));
  } else if (p == "rating") {
    const auto in = inputs();
    out.result["sum"] =
        int_to_json(take(secure_rating(ring_, in, topology(build_rating_graph(kof(in))), rng_, opts_)));
  } else if (p == "product") {
    const auto in = inputs();
    out.result["product"] =
        int_to_json(take(secure_product(ring_, in, topology(build_cycle(kof(in))), rng_, opts_)));
  } else if (p == "powers") {
    const auto in = inputs();
    const auto r = config_.at("exponent").get<std::uint64_t>();
    out.result["power_sum"] =
        int_to_json(take(sum_of_powers(ring_, in, r, topology(build_cycle(kof(in))), rng_, opts_)));
  } else if (p == "symmetric") {
    const auto in = inputs();
    out.result["elementary"] = ints(take(elementary_symmetric(ring_, in, topology(build_cycle(kof(in))), rng_)));
  } else if (p == "f1") {
    const auto in = inputs();
    out.result["f"] = int_to_json(take(example_f1(ring_, input_at(in, 0), input_at(in, 1), input_at(in, 2),
                                                  topology(build_cycle(3)), rng_, opts_)));
  } else if (p == "f2") {
    const auto in = inputs();
    const auto g = named_function(config_.value("g", std::string("square")));
    out.result["f"] = int_to_json(take(example_f2(ring_, input_at(in, 0), input_at(in, 1), input_at(in, 2),
                                                  g, topology(build_cycle(3)), rng_, opts_)));
  } else if (p == "millionaires") {
    const auto in = inputs();
    out.result["verdict"] = to_string(take(millionaires_compare(
        ring_, input_at(in, 0), input_at(in, 1), topology(build_dummy_triangle()), rng_, opts_)));
  } else if (p == "millionaires_bitwise") {
    const auto in = inputs();
    const auto v = take(millionaires_bitwise(input_at(in, 0), input_at(in, 1), count("bit_width"),
                                             topology(build_dummy_triangle()), rng_, opts_));
    out.result["verdict"] = to_string(v.verdict);
    out.result["deciding_bit"] = v.deciding_bit ? json(*v.deciding_bit) : json(nullptr);
  } else if (p == "commit3" || p == "commit2") {
    return commit(p == "commit3");
  } else if (p == "commitk") {
    return commit_cycle();
  } else if (p == "ot") {
    const auto messages = ints_from_json(config_.at("messages"));
    const auto indices = config_.at("indices").get<std::vector<int>>();
    out.result["retrieved"] =
        ints(take(ot_dummy(ring_, messages, indices, topology(build_dummy_triangle()), rng_, opts_)));
  } else if (p == "deal" || p == "protocol1") {
    const int k = count("players", 3);
    const int N = count("counter_bound", 10);
    const auto g = topology(build_cycle(k));
    DealResult d;
    if (p == "deal") {
      d = take(deal_deck(count("cards"), N, g, rng_, opts_));
      out.result["labels"] = d.labels;
      out.result["permutation"] = d.permutation;
    } else {
      DealConfig cfg{count("r"), N, config_.value("quotas", std::vector<int>{})};
      d = take(protocol1_distribute(cfg, g, rng_, opts_));
    }
    out.result["hands"] = hands_json(d.hands);
    out.result["quotas"] = d.quotas;
    out.result["starter"] = d.starter;
  } else if (p == "dummy_deal") {
    auto d = take(dummy_deal_two_players(count("cards"), count("counter_bound", 10), rng_, opts_));
    out.result["hands"] = hands_json({d.deal.hands[0], d.deal.hands[1]});
    out.result["discarded"] = d.discarded;
  } else if (p == "dealer") {
    std::optional<int> dummies;
    if (config_.contains("dummies") && config_.at("dummies").is_number_integer()) {
      dummies = config_.at("dummies").get<int>();
    }
    auto t = take(dummy_dealer_fixed_hands(count("cards"), count("players"), count("per_player"),
                                           count("counter_bound", 10), dummies, rng_, opts_));
    out.result["hands"] = hands_json(t.hands);
    out.result["residual"] = t.residual;
    out.result["dummies"] = t.dummies;
  } else if (p == "share") {
    const int k = count("players", 3);
    out.result["shares"] = ints(take(share_secret_kk(ring_, int_from_json(config_.at("secret")),
                                                     topology(build_sharing_graph(k)), rng_, opts_)));
  } else if (p == "subroutine") {
    const int k = count("players", 3);
    out.result["summands"] = ints(take(distribute_shares_subroutine(
        ring_, int_from_json(config_.at("value")), count("initiator", 1) - 1,
        topology(build_cycle(k)), rng_, opts_)));
  } else if (p == "shuffle") {
    const auto s = take(knuth_shuffle(count("cards"), topology(build_cycle(count("players", 3))), rng_, opts_));
    out.result["permutation"] = s.permutation;
    json swaps = json::array();
    for (const auto& [i, j] : s.swaps) swaps.push_back({i, j});
    out.result["swaps"] = swaps;
  } else if (p == "protocol2") {
    const int k = count("players", 3);
    out.result["value"] = int_to_json(take(protocol2_random_k(
        int_from_json(config_.at("modulus")), count("i", 1), topology(build_cycle(k)), rng_, opts_)));
  } else {
    throw ConfigError("unknown protocol '" + p + "'");
  }
  return out;
}

}  // namespace

std::vector<std::string> runnable_protocols() {
  return {"sum",     "rating",     "product", "powers",    "symmetric",  "f1",
          "f2",      "millionaires", "millionaires_bitwise", "commit3",  "commit2", "commitk",
          "ot",      "deal",       "protocol1", "dummy_deal", "dealer",  "share",
          "subroutine", "shuffle", "protocol2"};
}

RunOutput run_config(const json& config) {
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    return Runner(config).run();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config error: ") + ex.what());
  }
}

void append_transcript(Transcript& head, Transcript tail) {
  const std::uint64_t offset = head.messages.size();
  for (auto& m : tail.messages) {
    m.seq += offset;
    head.messages.push_back(std::move(m));
  }
  for (auto& e : tail.events) {
    e.before_seq += offset;
    head.events.push_back(std::move(e));
  }
  for (auto& ph : tail.phases) {
    ph.seq += offset;
    head.phases.push_back(std::move(ph));
  }
  for (std::size_t i = 0; i < tail.draws.size() && i < head.draws.size(); ++i) {
    head.draws[i] += tail.draws[i];
  }
}

ReplayReport replay_transcript(const TranscriptFile& file) {
  ReplayReport report;
  if (!file.header.contains("config") || file.header.at("config").is_null()) {
    throw ConfigError("transcript header carries no run config to replay");
  }
  const RunOutput again = run_config(file.header.at("config"));
  const auto& fresh = again.transcript.messages;
  const std::size_t n = std::min(fresh.size(), file.lines.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (message_line(fresh[i]) != file.lines[i]) {
      report.divergent_seq = fresh[i].seq;
      report.detail = "message #" + std::to_string(fresh[i].seq) + " differs: expected " +
                      message_line(fresh[i]) + ", found " + file.lines[i];
      return report;
    }
  }
  if (fresh.size() != file.lines.size()) {
    report.divergent_seq = n;
    report.detail = "replay produced " + std::to_string(fresh.size()) + " messages, file has " +
                    std::to_string(file.lines.size());
    return report;
  }
  if (file.header.value("public", json::object()) != again.transcript.meta) {
    report.detail = "public metadata differs from replay";
    return report;
  }
  report.verified = true;
  report.detail = "verified " + std::to_string(n) + " messages";
  return report;
}

json to_json(const CommitmentLedger& ledger) {
  json held = json::array();
  for (const auto& inv : ledger.held) {
    json row = json::object();
    for (const auto& [label, value] : inv) row[label] = int_to_json(value);
    held.push_back(row);
  }
  return {{"ring", to_json(ledger.ring)},
          {"topology", to_json(ledger.graph)},
          {"order", ledger.order},
          {"own", ints_to_json(ledger.own)},
          {"held", held},
          {"phase", to_string(ledger.phase)}};
}

CommitmentLedger ledger_from_json(const json& j) {
  try {
    CommitmentLedger ledger;
    ledger.ring = ring_from_json(j.at("ring"));
    ledger.graph = graph_from_json(j.at("topology"));
    ledger.order = j.at("order").get<std::vector<int>>();
    ledger.own = ints_from_json(j.at("own"));
    for (const auto& row : j.at("held")) {
      std::map<std::string, Int> inv;
      for (const auto& [label, value] : row.items()) inv[label] = int_from_json(value);
      ledger.held.push_back(std::move(inv));
    }
    const auto phase = j.at("phase").get<std::string>();
    if (phase == "committed") {
      ledger.phase = CommitPhase::Committed;
    } else if (phase == "revealed") {
      ledger.phase = CommitPhase::Revealed;
    } else {
      throw ConfigError("ledger phase must be committed|revealed");
    }
    return ledger;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed ledger: ") + ex.what());
  }
}

int exit_code_for(const std::exception& ex) {
  if (dynamic_cast<const ConfigError*>(&ex)) return kExitSchema;
  if (dynamic_cast<const TopologyError*>(&ex)) return kExitTopology;
  if (dynamic_cast<const CheatDetected*>(&ex)) return kExitCheat;
  return kExitFailure;
}

}  // namespace circmpc
