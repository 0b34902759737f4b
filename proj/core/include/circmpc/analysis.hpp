#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circmpc/engine.hpp"
#include "circmpc/serialization.hpp"

namespace circmpc {

// Two protected assignments, under the same condition, that induce different
// view distributions; `view` is a view whose probability differs.
struct Counterexample {
  std::string condition;
  std::string first;
  std::string second;
  std::string view;
  Rational p_first;
  Rational p_second;
};

// Accumulates weighted (condition, protected, view) observations and decides
// whether, for each condition, the view distribution is the same for every
// protected assignment. Exact rationals throughout.
class IndependenceCheck {
 public:
  void add(const std::string& condition, const std::string& protected_key,
           const std::string& view_key, const Rational& weight);
  std::optional<Counterexample> find_counterexample() const;

 private:
  using Distribution = std::map<std::string, Rational>;
  struct Bucket {
    Distribution views;
    Rational total = 0;
  };
  std::map<std::string, std::map<std::string, Bucket>> buckets_;
};

// Records (view, target) pairs and tells whether the view always pins down the
// target.
class DeterminationCheck {
 public:
  void add(const std::string& view_key, const std::string& target);
  bool determined() const { return determined_; }

 private:
  std::map<std::string, std::string> seen_;
  bool determined_ = true;
};

// Runs `once` under every randomness path; after a run, rng.weight() is the
// path's probability. Returns the number of runs and throws BudgetExceeded
// once `already` plus the new runs would pass `budget`.
std::uint64_t for_each_randomness(const std::function<void(ExhaustiveRandomness&)>& once,
                                  std::uint64_t budget, std::uint64_t already = 0);

enum class ObserverKind { Party, Coalition, Eavesdropper };

struct Observer {
  ObserverKind kind = ObserverKind::Party;
  std::vector<int> parties;
};

enum class Given { None, Sum, Difference };

// "The observer's view is independent of the protected quantities, given the
// remaining inputs and (optionally) f(protected)". Protected quantities are
// inputs by index, or the final shares for the sharing protocol.
struct SecrecySpec {
  std::string protocol;
  RingSpec ring = RingSpec::modular(2);
  int k = 3;
  Observer observer;
  std::vector<int> protected_inputs;
  bool protect_shares = false;
  Given given = Given::None;
  std::optional<std::string> until_phase;
  std::uint64_t budget = 5'000'000;
  std::optional<bool> expect_pass;
};

struct SecrecyReport {
  std::string claim;
  bool pass = false;
  std::uint64_t runs = 0;
  std::optional<Counterexample> counterexample;
};

SecrecySpec secrecy_spec_from_json(const json& j);
std::vector<SecrecySpec> secrecy_specs_from_json(const json& j);
std::string describe(const SecrecySpec& spec);
SecrecyReport secrecy_enumeration_check(const SecrecySpec& spec);
json to_json(const SecrecyReport& report);

struct CoalitionReport {
  std::vector<int> coalition;
  // Input expressions the joint view determines, e.g. "n1", "n3+n4".
  std::vector<std::string> learnable;
  // Non-member subsets whose sum the view determines.
  std::vector<std::vector<int>> determined_subsets;
};

// Enumerates secure_sum over Z_2 on a k-cycle and reports every sum of
// non-member inputs that the coalition's joint view fixes. Coalitions must be
// contiguous along the cycle.
CoalitionReport coalition_closure(int k, const std::vector<int>& coalition,
                                  std::uint64_t budget = 5'000'000);

struct TransmissionStats {
  std::uint64_t messages = 0;
  std::uint64_t bits = 0;
  // Per integer v < r: floor((hops carrying v - 1) / k).
  std::vector<int> circles;
  // Whether every player was still below quota when v started circulating.
  std::vector<bool> full_table;

  double mean_circles() const;
  double mean_circles_full_table() const;
};

// Payload bits are ceil(log2(v + 2)) per circulated integer.
TransmissionStats transmission_stats(const Transcript& t);

}  // namespace circmpc
