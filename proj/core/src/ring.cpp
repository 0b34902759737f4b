#include "circmpc/ring.hpp"

#include <boost/multiprecision/integer.hpp>

namespace circmpc {

namespace {

constexpr std::size_t kUnitTableLimit = 1 << 16;

}  // namespace

RingSpec RingSpec::integers(Int noise_bound) {
  RingSpec spec;
  spec.kind = RingKind::Integers;
  spec.noise_bound = std::move(noise_bound);
  return spec;
}

RingSpec RingSpec::modular(Int m) {
  RingSpec spec;
  spec.kind = RingKind::IntegersModM;
  spec.modulus = std::move(m);
  spec.noise_bound = 0;
  return spec;
}

std::string RingSpec::to_string() const {
  if (is_modular()) return "Z_" + circmpc::to_string(modulus);
  return "Z[noise<=" + circmpc::to_string(noise_bound) + "]";
}

Ring::Ring(RingSpec spec) : spec_(std::move(spec)) {
  if (spec_.is_modular()) {
    if (spec_.modulus < 2) throw RingError("modulus must be >= 2");
  } else if (spec_.noise_bound < 1) {
    throw RingError("noise_bound must be >= 1");
  }
}

Int Ring::reduce(const Int& x) const {
  if (!is_modular()) return x;
  Int r = x % spec_.modulus;
  if (r < 0) r += spec_.modulus;
  return r;
}

bool Ring::contains(const Int& x) const {
  return !is_modular() || (x >= 0 && x < spec_.modulus);
}

void Ring::check(const Int& x) const {
  if (!contains(x)) {
    throw RingError("operand " + circmpc::to_string(x) + " is not a canonical element of " +
                    spec_.to_string());
  }
}

Int Ring::add(const Int& a, const Int& b) const {
  check(a);
  check(b);
  return reduce(a + b);
}

Int Ring::sub(const Int& a, const Int& b) const {
  check(a);
  check(b);
  return reduce(a - b);
}

Int Ring::neg(const Int& a) const {
  check(a);
  return reduce(-a);
}

Int Ring::mul(const Int& a, const Int& b) const {
  check(a);
  check(b);
  return reduce(a * b);
}

Int Ring::pow(const Int& a, std::uint64_t exponent) const {
  check(a);
  if (is_modular()) return boost::multiprecision::powm(a, Int(exponent), spec_.modulus);
  Int result = 1;
  Int base = a;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool Ring::is_legal_divisor(const Int& a) const {
  check(a);
  if (!is_modular()) return a != 0;
  return boost::multiprecision::gcd(a, spec_.modulus) == 1;
}

Int Ring::inverse(const Int& a) const {
  if (!is_modular()) throw RingError("inverse is only defined in modular mode");
  if (!is_legal_divisor(a)) {
    throw RingError(circmpc::to_string(a) + " is not a unit of " + spec_.to_string());
  }
  // Extended Euclid on (a, m).
  Int old_r = a, r = spec_.modulus;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  return reduce(old_s);
}

Int Ring::exact_div(const Int& r, const Int& a) const {
  check(r);
  check(a);
  if (a == 0) throw RingError("division by zero");
  if (is_modular()) return mul(r, inverse(a));
  if (r % a != 0) {
    throw RingError(circmpc::to_string(r) + " is not divisible by " + circmpc::to_string(a));
  }
  return r / a;
}

Int Ring::lift_signed(const Int& x) const {
  check(x);
  if (!is_modular()) return x;
  if (2 * x > spec_.modulus) return x - spec_.modulus;
  return x;
}

std::vector<Int> Ring::units() const {
  if (!is_modular()) throw RingError("units() requires a modular ring");
  std::vector<Int> out;
  for (Int x = 1; x < spec_.modulus; ++x) {
    if (boost::multiprecision::gcd(x, spec_.modulus) == 1) out.push_back(x);
  }
  return out;
}

Int sample_noise(const Ring& ring, RandomSource& rng, bool require_unit) {
  if (ring.is_modular()) {
    const Int& m = ring.modulus();
    if (!require_unit) return rng.uniform(0, m - 1);
    if (m <= kUnitTableLimit) {
      // Index into the unit table so every draw is a single uniform choice.
      const auto units = ring.units();
      const Int idx = rng.uniform(0, Int(units.size()) - 1);
      return units[static_cast<std::size_t>(idx)];
    }
    for (;;) {
      Int x = rng.uniform(1, m - 1);
      if (ring.is_legal_divisor(x)) return x;
    }
  }
  const Int& bound = ring.spec().noise_bound;
  if (!require_unit) return rng.uniform(-bound, bound);
  // [0, 2B-1] mapped onto [-B, -1] U [1, B].
  Int x = rng.uniform(0, 2 * bound - 1) - bound;
  return x >= 0 ? x + 1 : x;
}

std::size_t bit_length(const Int& x) {
  if (x <= 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

std::string to_string(const Int& x) { return x.str(); }

Int parse_int(const std::string& text) {
  if (text.empty()) throw ConfigError("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ConfigError("malformed integer literal '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ConfigError("malformed integer literal '" + text + "'");
    }
  }
  Int value(text.substr(start));
  return text[0] == '-' ? Int(-value) : value;
}

}  // namespace circmpc
