#include "circmpc/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "circmpc/arith.hpp"
#include "circmpc/commitment.hpp"
#include "circmpc/secret_sharing.hpp"

namespace circmpc {

void IndependenceCheck::add(const std::string& condition, const std::string& protected_key,
                            const std::string& view_key, const Rational& weight) {
  auto& bucket = buckets_[condition][protected_key];
  bucket.views[view_key] += weight;
  bucket.total += weight;
}

std::optional<Counterexample> IndependenceCheck::find_counterexample() const {
  for (const auto& [condition, by_protected] : buckets_) {
    if (by_protected.size() < 2) continue;
    const auto& [ref_key, ref] = *by_protected.begin();
    for (const auto& [key, bucket] : by_protected) {
      if (&bucket == &ref) continue;
      std::set<std::string> views;
      for (const auto& [v, w] : ref.views) views.insert(v);
      for (const auto& [v, w] : bucket.views) views.insert(v);
      for (const auto& v : views) {
        auto a = ref.views.find(v);
        auto b = bucket.views.find(v);
        const Rational pa = a == ref.views.end() ? Rational(0) : Rational(a->second / ref.total);
        const Rational pb = b == bucket.views.end() ? Rational(0) : Rational(b->second / bucket.total);
        if (pa != pb) return Counterexample{condition, ref_key, key, v, pa, pb};
      }
    }
  }
  return std::nullopt;
}

void DeterminationCheck::add(const std::string& view_key, const std::string& target) {
  auto [it, inserted] = seen_.emplace(view_key, target);
  if (!inserted && it->second != target) determined_ = false;
}

std::uint64_t for_each_randomness(const std::function<void(ExhaustiveRandomness&)>& once,
                                  std::uint64_t budget, std::uint64_t already) {
  ExhaustiveRandomness rng;
  std::uint64_t runs = 0;
  do {
    if (already + runs >= budget) {
      throw BudgetExceeded("enumeration exceeds the budget of " + std::to_string(budget) + " runs");
    }
    rng.begin_run();
    once(rng);
    ++runs;
  } while (rng.advance());
  return runs;
}

namespace {

struct Enumerated {
  Transcript transcript;
  std::vector<Int> outputs;
};

std::string join(const std::vector<Int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += to_string(xs[i]);
  }
  return out;
}

std::size_t input_count(const SecrecySpec& spec) {
  const std::string& p = spec.protocol;
  if (p == "sum" || p == "product" || p == "rating" || p == "commitk") return static_cast<std::size_t>(spec.k);
  if (p == "commit3") return 3;
  if (p == "commit2" || p == "millionaires") return 2;
  if (p == "share") return 1;
  throw ConfigError("no enumeration support for protocol '" + p + "'");
}

std::vector<Int> input_domain(const SecrecySpec& spec, const Ring& ring) {
  if (!ring.is_modular()) throw ConfigError("exhaustive checks need a finite ring Zm");
  if (spec.protocol == "product") return ring.units();
  Int top = ring.modulus() - 1;
  // Keep |n1 - n2| < m/2 so the difference survives reduction.
  if (spec.protocol == "millionaires") top = (ring.modulus() - 1) / 2;
  std::vector<Int> out;
  for (Int v = 0; v <= top; ++v) out.push_back(v);
  return out;
}

Enumerated run_protocol(const SecrecySpec& spec, const Ring& ring, const std::vector<Int>& in,
                        RandomnessProvider& rng) {
  const std::string& p = spec.protocol;
  if (p == "sum") {
    auto o = secure_sum(ring, in, build_cycle(spec.k), rng);
    return {std::move(o.transcript), {o.result}};
  }
  if (p == "product") {
    auto o = secure_product(ring, in, build_cycle(spec.k), rng);
    return {std::move(o.transcript), {o.result}};
  }
  if (p == "rating") {
    auto o = secure_rating(ring, in, build_rating_graph(spec.k), rng);
    return {std::move(o.transcript), {o.result}};
  }
  if (p == "commit3") {
    auto o = commit3(ring, in[0], in[1], in[2], build_cycle(3), rng);
    return {std::move(o.transcript), {}};
  }
  if (p == "commitk") {
    auto o = commitk(ring, in, build_cycle(spec.k), rng);
    return {std::move(o.transcript), {}};
  }
  if (p == "commit2") {
    auto o = commit2_dummy(ring, in[0], in[1], build_dummy_triangle(), rng);
    return {std::move(o.transcript), {}};
  }
  if (p == "millionaires") {
    auto o = millionaires_compare(ring, in[0], in[1], build_dummy_triangle(), rng);
    return {std::move(o.transcript), {}};
  }
  if (p == "share") {
    auto o = share_secret_kk(ring, in[0], build_sharing_graph(spec.k), rng);
    return {std::move(o.transcript), std::move(o.result)};
  }
  throw ConfigError("no enumeration support for protocol '" + p + "'");
}

View observe(const Observer& obs, const Transcript& t, std::optional<std::uint64_t> until) {
  switch (obs.kind) {
    case ObserverKind::Party: return extract_view(t, obs.parties.at(0), until);
    case ObserverKind::Coalition: return coalition_view(t, obs.parties, until);
    case ObserverKind::Eavesdropper: return eavesdropper_view(t, until);
  }
  return {};
}

int parse_party(const json& j) {
  if (j.is_number_integer()) return j.get<int>() - 1;
  const auto s = j.get<std::string>();
  if (s.size() < 2 || (s[0] != 'P' && s[0] != 'p')) throw ConfigError("party must look like \"P2\"");
  return std::stoi(s.substr(1)) - 1;
}

int parse_input(const json& j) {
  if (j.is_number_integer()) return j.get<int>() - 1;
  const auto s = j.get<std::string>();
  if (s.size() < 2 || s[0] != 'n') throw ConfigError("protected input must look like \"n2\"");
  return std::stoi(s.substr(1)) - 1;
}

std::string party_name(int p) { return "P" + std::to_string(p + 1); }

}  // namespace

SecrecySpec secrecy_spec_from_json(const json& j) {
  try {
    SecrecySpec spec;
    spec.protocol = j.at("protocol").get<std::string>();
    spec.ring = ring_from_json(j.at("ring"));
    spec.k = j.value("k", 3);
    const auto& obs = j.at("observer");
    if (obs.is_string() && obs.get<std::string>() == "eavesdropper") {
      spec.observer = {ObserverKind::Eavesdropper, {}};
    } else if (obs.is_array()) {
      spec.observer.kind = ObserverKind::Coalition;
      for (const auto& p : obs) spec.observer.parties.push_back(parse_party(p));
    } else {
      spec.observer = {ObserverKind::Party, {parse_party(obs)}};
    }
    const auto& prot = j.at("protected");
    if (prot.is_string() && prot.get<std::string>() == "shares") {
      spec.protect_shares = true;
    } else {
      for (const auto& x : prot) spec.protected_inputs.push_back(parse_input(x));
    }
    const auto given = j.value("given", std::string("none"));
    if (given == "sum") {
      spec.given = Given::Sum;
    } else if (given == "difference") {
      spec.given = Given::Difference;
    } else if (given != "none") {
      throw ConfigError("given must be none|sum|difference");
    }
    if (j.contains("until_phase")) spec.until_phase = j.at("until_phase").get<std::string>();
    if (j.contains("budget")) spec.budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("expect")) {
      const auto& e = j.at("expect");
      spec.expect_pass = e.is_boolean() ? e.get<bool>() : e.get<std::string>() == "pass";
    }
    return spec;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed secrecy spec: ") + ex.what());
  }
}

std::vector<SecrecySpec> secrecy_specs_from_json(const json& j) {
  std::vector<SecrecySpec> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(secrecy_spec_from_json(s));
  } else if (j.contains("checks")) {
    for (const auto& s : j.at("checks")) out.push_back(secrecy_spec_from_json(s));
  } else {
    out.push_back(secrecy_spec_from_json(j));
  }
  return out;
}

std::string describe(const SecrecySpec& spec) {
  std::string who;
  switch (spec.observer.kind) {
    case ObserverKind::Eavesdropper: who = "eavesdropper"; break;
    case ObserverKind::Party: who = party_name(spec.observer.parties.at(0)); break;
    case ObserverKind::Coalition:
      who = "{";
      for (std::size_t i = 0; i < spec.observer.parties.size(); ++i) {
        who += (i ? "," : "") + party_name(spec.observer.parties[i]);
      }
      who += "}";
      break;
  }
  std::string what;
  if (spec.protect_shares) {
    what = "shares";
  } else {
    what = "(";
    for (std::size_t i = 0; i < spec.protected_inputs.size(); ++i) {
      what += (i ? "," : "") + std::string("n") + std::to_string(spec.protected_inputs[i] + 1);
    }
    what += ")";
  }
  std::string out = spec.protocol + " over " + spec.ring.to_string() + " k=" +
                    std::to_string(spec.k) + ": view(" + who + ") independent of " + what;
  if (spec.given == Given::Sum) out += " given their sum";
  if (spec.given == Given::Difference) out += " given their difference";
  if (spec.until_phase) out += " before phase " + *spec.until_phase;
  return out;
}

SecrecyReport secrecy_enumeration_check(const SecrecySpec& spec) {
  const Ring ring(spec.ring);
  const std::size_t n = input_count(spec);
  const auto domain = input_domain(spec, ring);
  for (int p : spec.protected_inputs) {
    if (p < 0 || static_cast<std::size_t>(p) >= n) throw ConfigError("protected input out of range");
  }
  if (spec.given == Given::Difference && spec.protected_inputs.size() != 2) {
    throw ConfigError("difference is defined for two protected inputs");
  }
  std::vector<bool> is_protected(n, false);
  for (int p : spec.protected_inputs) is_protected[static_cast<std::size_t>(p)] = true;

  SecrecyReport report;
  report.claim = describe(spec);
  IndependenceCheck check;

  std::vector<std::size_t> digits(n, 0);
  for (;;) {
    std::vector<Int> inputs(n);
    for (std::size_t i = 0; i < n; ++i) inputs[i] = domain[digits[i]];

    std::vector<Int> fixed, prot;
    for (std::size_t i = 0; i < n; ++i) (is_protected[i] ? prot : fixed).push_back(inputs[i]);
    std::string condition = join(fixed);
    if (spec.given == Given::Sum) {
      Int sum = 0;
      for (const auto& v : prot) sum = ring.add(sum, v);
      condition += "|sum=" + to_string(sum);
    } else if (spec.given == Given::Difference) {
      condition += "|diff=" + to_string(Int(prot[0] - prot[1]));
    }

    report.runs += for_each_randomness(
        [&](ExhaustiveRandomness& rng) {
          auto run = run_protocol(spec, ring, inputs, rng);
          std::optional<std::uint64_t> until;
          if (spec.until_phase) {
            until = run.transcript.phase_start(*spec.until_phase);
            if (!until) throw ConfigError("protocol has no phase '" + *spec.until_phase + "'");
          }
          const auto view = observe(spec.observer, run.transcript, until);
          const std::string protected_key = spec.protect_shares ? join(run.outputs) : join(prot);
          check.add(condition, protected_key, view.key(), rng.weight());
        },
        spec.budget, report.runs);

    std::size_t d = 0;
    while (d < n && ++digits[d] == domain.size()) digits[d++] = 0;
    if (d == n) break;
  }

  report.counterexample = check.find_counterexample();
  report.pass = !report.counterexample;
  return report;
}

json to_json(const SecrecyReport& report) {
  json j = {{"claim", report.claim}, {"pass", report.pass}, {"runs", report.runs}};
  if (report.counterexample) {
    const auto& c = *report.counterexample;
    j["counterexample"] = {{"condition", c.condition},
                           {"protected_a", c.first},
                           {"protected_b", c.second},
                           {"view", c.view},
                           {"p_a", c.p_first.str()},
                           {"p_b", c.p_second.str()}};
  }
  return j;
}

CoalitionReport coalition_closure(int k, const std::vector<int>& coalition, std::uint64_t budget) {
  const ChannelGraph g = build_cycle(k);
  const auto order = cycle_order(g);
  if (coalition.empty() || static_cast<int>(coalition.size()) >= k) {
    throw ProtocolError("coalition must have between 1 and k-1 members");
  }
  std::vector<bool> member(static_cast<std::size_t>(k), false);
  for (int p : coalition) {
    if (p < 0 || p >= k) throw ProtocolError("coalition member out of range");
    if (member[static_cast<std::size_t>(p)]) throw ProtocolError("duplicate coalition member");
    member[static_cast<std::size_t>(p)] = true;
  }
  // Contiguous iff exactly one member follows a non-member around the cycle.
  int starts = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const bool here = member[static_cast<std::size_t>(order[i])];
    const bool before = member[static_cast<std::size_t>(order[(i + order.size() - 1) % order.size()])];
    if (here && !before) ++starts;
  }
  if (starts != 1) throw ProtocolError("coalition must be contiguous along the cycle");

  std::vector<int> outsiders;
  for (int p = 0; p < k; ++p) {
    if (!member[static_cast<std::size_t>(p)]) outsiders.push_back(p);
  }
  const std::size_t subsets = std::size_t{1} << outsiders.size();
  std::vector<DeterminationCheck> checks(subsets);

  const Ring z2(RingSpec::modular(2));
  std::vector<int> members = coalition;
  std::sort(members.begin(), members.end());
  std::uint64_t runs = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<Int> inputs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) inputs[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    runs += for_each_randomness(
        [&](ExhaustiveRandomness& rng) {
          auto o = secure_sum(z2, inputs, g, rng);
          const std::string key = coalition_view(o.transcript, members).key();
          for (std::size_t s = 1; s < subsets; ++s) {
            int parity = 0;
            for (std::size_t b = 0; b < outsiders.size(); ++b) {
              if ((s >> b) & 1) parity ^= static_cast<int>(inputs[static_cast<std::size_t>(outsiders[b])]);
            }
            checks[s].add(key, std::to_string(parity));
          }
        },
        budget, runs);
  }

  CoalitionReport report;
  report.coalition = members;
  for (int p : members) report.learnable.push_back("n" + std::to_string(p + 1));
  for (std::size_t s = 1; s < subsets; ++s) {
    if (!checks[s].determined()) continue;
    std::vector<int> subset;
    std::string expr;
    for (std::size_t b = 0; b < outsiders.size(); ++b) {
      if ((s >> b) & 1) {
        subset.push_back(outsiders[b]);
        expr += (expr.empty() ? "n" : "+n") + std::to_string(outsiders[b] + 1);
      }
    }
    report.determined_subsets.push_back(std::move(subset));
    report.learnable.push_back(std::move(expr));
  }
  return report;
}

double TransmissionStats::mean_circles() const {
  if (circles.empty()) return 0.0;
  return std::accumulate(circles.begin(), circles.end(), 0.0) / static_cast<double>(circles.size());
}

double TransmissionStats::mean_circles_full_table() const {
  double total = 0.0;
  std::size_t n = 0;
  for (std::size_t v = 0; v < circles.size(); ++v) {
    if (!full_table[v]) continue;
    total += circles[v];
    ++n;
  }
  return n ? total / static_cast<double>(n) : 0.0;
}

TransmissionStats transmission_stats(const Transcript& t) {
  const auto& meta = t.meta;
  if (!meta.contains("r") || !meta.contains("k") || !meta.contains("quotas")) {
    throw ProtocolError("transcript of '" + t.protocol + "' is not a dealing transcript");
  }
  const int r = meta.at("r").get<int>();
  const int k = meta.at("k").get<int>();
  const auto quotas = meta.at("quotas").get<std::vector<int>>();

  TransmissionStats stats;
  std::vector<int> hops(static_cast<std::size_t>(r) + 1, 0);
  for (const auto& m : t.messages) {
    if (m.label != "int") continue;
    ++stats.messages;
    stats.bits += bit_length(m.value + 1);
    ++hops.at(static_cast<std::size_t>(m.value));
  }
  stats.circles.resize(static_cast<std::size_t>(r));
  for (int v = 0; v < r; ++v) stats.circles[static_cast<std::size_t>(v)] = (hops[static_cast<std::size_t>(v)] - 1) / k;

  // keeper[v] for v in 1..r, from the private keep events.
  std::vector<int> keeper(static_cast<std::size_t>(r) + 1, -1);
  for (const auto& e : t.events) {
    if (e.kind == EventKind::Derived && e.label == "keep" && e.value > 0) {
      keeper.at(static_cast<std::size_t>(e.value)) = e.party;
    }
  }
  std::vector<int> held(quotas.size(), 0);
  stats.full_table.resize(static_cast<std::size_t>(r));
  for (int v = 0; v < r; ++v) {
    // v starts circulating once v - 1 has been kept.
    if (v > 1 && keeper[static_cast<std::size_t>(v - 1)] >= 0) {
      ++held[static_cast<std::size_t>(keeper[static_cast<std::size_t>(v - 1)])];
    }
    bool all_open = true;
    for (std::size_t p = 0; p < quotas.size(); ++p) {
      if (held[p] >= quotas[p]) all_open = false;
    }
    stats.full_table[static_cast<std::size_t>(v)] = all_open;
  }
  return stats;
}

}  // namespace circmpc
