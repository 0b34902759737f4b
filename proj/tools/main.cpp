#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "circmpc/analysis.hpp"
#include "circmpc/runner.hpp"
#include "circmpc/secret_sharing.hpp"

using namespace circmpc;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ConfigError(path + ": " + ex.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// Flags shared by every subcommand that runs a protocol.
struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> ring;
  std::optional<std::string> out;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "randomness seed");
    app->add_option("--ring", ring, "Z, Z:<noise bound> or Zm:<m>");
    app->add_option("--out", out, "transcript output path");
  }
  void apply(json& config) const {
    if (seed) config["seed"] = *seed;
    if (ring) config["ring"] = *ring;
  }
};

int execute(json config, const Common& common, const std::string& default_out,
            const std::function<void(json&, const RunOutput&)>& extra = {}) {
  common.apply(config);
  RunOutput run = run_config(config);
  const std::string path = common.out.value_or(default_out);
  write_file(path, transcript_text(run.transcript));
  run.result["transcript"] = path;
  if (extra) extra(run.result, run);
  std::cout << run.result.dump(2) << '\n';
  return kExitOk;
}

json csv_ints(const std::vector<std::string>& items) {
  json out = json::array();
  for (const auto& s : items) out.push_back(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular-topology secure computation without one-way functions"};
  app.require_subcommand(1);
  std::function<int()> action;

  // run
  Common run_common;
  std::string config_path;
  auto* run = app.add_subcommand("run", "run a protocol from a JSON config");
  run->add_option("config", config_path, "config file")->required();
  run_common.attach(run);
  run->callback([&] {
    action = [&] { return execute(read_json_file(config_path), run_common, config_path + ".transcript"); };
  });

  // replay
  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "re-run a transcript and compare every message");
  replay->add_option("transcript", replay_path)->required();
  replay->callback([&] {
    action = [&] {
      std::ifstream in(replay_path);
      if (!in) throw ConfigError("cannot open " + replay_path);
      const ReplayReport r = replay_transcript(read_transcript(in));
      json out = {{"verified", r.verified}, {"detail", r.detail}};
      if (r.divergent_seq) out["divergent_seq"] = *r.divergent_seq;
      std::cout << out.dump(2) << '\n';
      return r.verified ? kExitOk : kExitDivergence;
    };
  });

  // verify
  std::string spec_path;
  auto* verify = app.add_subcommand("verify", "exhaustive secrecy checks from a spec file");
  verify->add_option("--spec", spec_path)->required();
  verify->callback([&] {
    action = [&] {
      bool ok = true;
      json reports = json::array();
      for (const auto& spec : secrecy_specs_from_json(read_json_file(spec_path))) {
        const SecrecyReport r = secrecy_enumeration_check(spec);
        ok = ok && r.pass == spec.expect_pass.value_or(true);
        reports.push_back(to_json(r));
      }
      std::cout << reports.dump(2) << '\n';
      return ok ? kExitOk : kExitFailure;
    };
  });

  // deal
  Common deal_common;
  int cards = 52, players = 3, counter_bound = 10;
  std::optional<std::string> dummies;
  std::optional<int> per_player;
  auto* deal = app.add_subcommand("deal", "deal a deck around the cycle");
  deal->add_option("--cards", cards)->required();
  deal->add_option("--players", players)->required();
  deal->add_option("--counter-bound", counter_bound)->required();
  deal->add_option("--dummies", dummies, "auto or a count; needs --per-player unless players = 2");
  deal->add_option("--per-player", per_player, "fixed hand size served by a dummy dealer");
  deal_common.attach(deal);
  deal->callback([&] {
    action = [&] {
      json config = {{"cards", cards}, {"players", players}, {"counter_bound", counter_bound}};
      if (per_player) {
        config["protocol"] = "dealer";
        config["per_player"] = *per_player;
        if (dummies && *dummies != "auto") config["dummies"] = std::stoi(*dummies);
      } else if (dummies) {
        if (players != 2 || (*dummies != "auto" && *dummies != "1")) {
          throw ConfigError("--dummies without --per-player is only the two-player, one-dummy deal");
        }
        config["protocol"] = "dummy_deal";
      } else {
        config["protocol"] = "deal";
      }
      return execute(config, deal_common, "deal.transcript");
    };
  });

  // share / reconstruct
  Common share_common;
  std::string secret;
  int share_players = 3;
  auto* share = app.add_subcommand("share", "(k,k) secret sharing through a dummy dealer");
  share->add_option("--secret", secret)->required();
  share->add_option("--players", share_players)->required();
  share_common.attach(share);
  share->callback([&] {
    action = [&] {
      json config = {{"protocol", "share"}, {"secret", secret}, {"players", share_players}};
      return execute(config, share_common, "share.transcript", [&](json& result, const RunOutput&) {
        result["ring"] = to_json(Ring(ring_from_json(json(share_common.ring.value_or("Z")))).spec());
      });
    };
  });

  std::string shares_path;
  std::optional<std::string> reconstruct_ring;
  auto* rec = app.add_subcommand("reconstruct", "sum a full set of shares");
  rec->add_option("--shares", shares_path, "JSON file: array, or object with shares and ring")->required();
  rec->add_option("--ring", reconstruct_ring);
  rec->callback([&] {
    action = [&] {
      const json j = read_json_file(shares_path);
      const json& arr = j.is_array() ? j : j.at("shares");
      RingSpec spec = RingSpec::integers();
      if (reconstruct_ring) {
        spec = ring_from_flag(*reconstruct_ring);
      } else if (j.is_object() && j.contains("ring")) {
        spec = ring_from_json(j.at("ring"));
      }
      std::vector<std::optional<Int>> shares;
      for (const auto& s : arr) {
        shares.push_back(s.is_null() ? std::nullopt : std::optional<Int>(int_from_json(s)));
      }
      std::cout << json{{"secret", int_to_json(reconstruct(Ring(spec), shares))}}.dump(2) << '\n';
      return kExitOk;
    };
  });

  // commitments and OT
  Common commit3_common;
  std::vector<std::string> commit_inputs;
  std::string ledger_path = "ledger.json";
  auto* c3 = app.add_subcommand("commit3", "three-party commitment; writes the ledger");
  c3->add_option("--inputs", commit_inputs)->required()->expected(3)->delimiter(',');
  c3->add_option("--ledger", ledger_path, "ledger output path");
  commit3_common.attach(c3);
  c3->callback([&] {
    action = [&] {
      json config = {{"protocol", "commit3"}, {"inputs", csv_ints(commit_inputs)}, {"reveal", false}};
      return execute(config, commit3_common, "commit3.transcript", [&](json& result, const RunOutput&) {
        write_file(ledger_path, result.at("ledger").dump(2) + "\n");
        result["ledger_path"] = ledger_path;
      });
    };
  });

  std::string reveal_ledger;
  std::optional<std::string> reveal_out;
  auto* d3 = app.add_subcommand("decommit3", "reveal from a commit3 ledger");
  d3->add_option("--ledger", reveal_ledger)->required();
  d3->add_option("--out", reveal_out, "transcript output path");
  d3->callback([&] {
    action = [&] {
      CommitmentLedger ledger = ledger_from_json(read_json_file(reveal_ledger));
      SeededRandomness rng(0);
      RevealResult r = decommit3(ledger, rng);
      const std::string path = reveal_out.value_or("decommit3.transcript");
      write_file(path, transcript_text(r.transcript));
      json rows = json::array();
      for (const auto& row : r.recovered) rows.push_back(ints_to_json(row));
      std::cout << json{{"recovered", rows}, {"transcript", path}}.dump(2) << '\n';
      return kExitOk;
    };
  });

  Common commit2_common;
  std::vector<std::string> commit2_inputs;
  bool commit2_reveal = false;
  auto* c2 = app.add_subcommand("commit2", "two-party commitment with a dummy");
  c2->add_option("--inputs", commit2_inputs)->required()->expected(2)->delimiter(',');
  c2->add_flag("--reveal", commit2_reveal, "run the reveal phase too");
  commit2_common.attach(c2);
  c2->callback([&] {
    action = [&] {
      json config = {{"protocol", "commit2"}, {"inputs", csv_ints(commit2_inputs)}, {"reveal", commit2_reveal}};
      return execute(config, commit2_common, "commit2.transcript");
    };
  });

  Common ot_common;
  std::vector<std::string> ot_messages;
  std::vector<int> ot_indices;
  auto* ot = app.add_subcommand("ot", "k-of-n oblivious transfer through a dummy");
  ot->add_option("--messages", ot_messages)->required()->delimiter(',');
  ot->add_option("--indices", ot_indices, "1-based")->required()->delimiter(',');
  ot_common.attach(ot);
  ot->callback([&] {
    action = [&] {
      json config = {{"protocol", "ot"}, {"messages", csv_ints(ot_messages)}, {"indices", ot_indices}};
      return execute(config, ot_common, "ot.transcript");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }
  try {
    return action();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return exit_code_for(ex);
  }
}
