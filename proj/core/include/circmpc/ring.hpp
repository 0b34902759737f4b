#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "circmpc/errors.hpp"

namespace circmpc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class RingKind { Integers, IntegersModM };

inline constexpr std::int64_t kDefaultNoiseBound = 1'000'000'000;

// Descriptor of a constructible ring: Z (with a bound on sampled noise) or Z_m.
struct RingSpec {
  RingKind kind = RingKind::Integers;
  Int modulus = 0;
  Int noise_bound = kDefaultNoiseBound;

  static RingSpec integers(Int noise_bound = kDefaultNoiseBound);
  static RingSpec modular(Int m);

  bool is_modular() const { return kind == RingKind::IntegersModM; }
  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

// Uniform integer source. Implementations decide where the entropy comes from
// (seeded generator, scripted values, exhaustive enumeration).
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  // Uniform over the closed interval [lo, hi]; requires lo <= hi.
  virtual Int uniform(const Int& lo, const Int& hi) = 0;
};

// Arithmetic in a RingSpec. Elements are plain Int values; in modular mode
// every input must already be canonical (0 <= x < m) and every output is.
class Ring {
 public:
  explicit Ring(RingSpec spec);

  const RingSpec& spec() const { return spec_; }
  bool is_modular() const { return spec_.is_modular(); }
  const Int& modulus() const { return spec_.modulus; }

  // Maps an arbitrary integer to its canonical representative.
  Int reduce(const Int& x) const;
  bool contains(const Int& x) const;

  Int zero() const { return 0; }
  Int one() const { return reduce(1); }

  Int add(const Int& a, const Int& b) const;
  Int sub(const Int& a, const Int& b) const;
  Int neg(const Int& a) const;
  Int mul(const Int& a, const Int& b) const;
  Int pow(const Int& a, std::uint64_t exponent) const;

  // Nonzero over Z, unit over Z_m.
  bool is_legal_divisor(const Int& a) const;
  Int inverse(const Int& a) const;  // Z_m only

  // The unique x with a*x = r. Over Z a nonzero remainder means the value was
  // corrupted upstream and raises RingError.
  Int exact_div(const Int& r, const Int& a) const;

  // Symmetric lift (-m/2, m/2] in modular mode; identity over Z.
  Int lift_signed(const Int& x) const;

  // Units of Z_m in increasing order (modular mode only).
  std::vector<Int> units() const;

 private:
  void check(const Int& x) const;

  RingSpec spec_;
};

// Noise element: uniform over Z_m (or its units when require_unit), uniform
// over [-B, B] over Z (nonzero when require_unit).
Int sample_noise(const Ring& ring, RandomSource& rng, bool require_unit);

// Bit length of a non-negative integer (0 for 0).
std::size_t bit_length(const Int& x);

std::string to_string(const Int& x);
Int parse_int(const std::string& text);

}  // namespace circmpc
