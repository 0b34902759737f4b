#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace circmpc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid operands, mismatched rings, non-invertible divisors.
class RingError : public Error {
 public:
  using Error::Error;
};

// The channel graph does not satisfy what the protocol needs.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// Malformed config, transcript or spec file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Protocol precondition violated (bad index set, wrong phase, ...).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A party without a randomness source tried to draw. Always a programming
// error in the protocol, never something to recover from.
class DummyRandomnessError : public Error {
 public:
  explicit DummyRandomnessError(int party)
      : Error("dummy party P" + std::to_string(party + 1) +
              " attempted to draw randomness"),
        party_(party) {}
  int party() const { return party_; }

 private:
  int party_;
};

// An honest party's consistency check failed during a reveal.
class CheatDetected : public Error {
 public:
  CheatDetected(int detector, std::uint64_t seq, std::string label)
      : Error("cheat detected by P" + std::to_string(detector + 1) +
              " at message #" + std::to_string(seq) + " (" + label + ")"),
        detector_(detector),
        seq_(seq),
        label_(std::move(label)) {}

  int detector() const { return detector_; }
  std::uint64_t seq() const { return seq_; }
  const std::string& label() const { return label_; }

 private:
  int detector_;
  std::uint64_t seq_;
  std::string label_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace circmpc
