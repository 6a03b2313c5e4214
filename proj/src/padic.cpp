#include "epsilocal/padic.hpp"

#include <algorithm>
#include <cmath>

#include "epsilocal/error.hpp"

namespace epsilocal {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 inverse_mod(u64 a, u64 m) {
  i128 old_r = static_cast<i128>(a % m), r = static_cast<i128>(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw InvariantError("inverse of non-unit modulo p^N");
  i128 out = old_s % static_cast<i128>(m);
  if (out < 0) out += m;
  return static_cast<u64>(out);
}

// Reduces a signed integer into [0, m).
u64 reduce_signed(i64 value, u64 m) {
  const i128 r = static_cast<i128>(value) % static_cast<i128>(m);
  return static_cast<u64>(r < 0 ? r + m : r);
}

}  // namespace

PrecisionBudget::PrecisionBudget(int digits, std::string why)
    : required_digits(std::max(1, digits)), reason(std::move(why)) {}

void PrecisionBudget::require(int available) const {
  if (available < required_digits) {
    throw PrecisionError("precision budget '" + reason + "' needs " +
                         std::to_string(required_digits) + " digits, only " +
                         std::to_string(available) + " available");
  }
}

int max_precision(i64 p) {
  if (p < 2) throw InputError("prime must be >= 2");
  int n = 0;
  u128 acc = 1;
  while (acc * static_cast<u128>(p) < (static_cast<u128>(1) << 62)) {
    acc *= static_cast<u128>(p);
    ++n;
  }
  return n;
}

u64 prime_power(i64 p, int k) {
  if (k < 0) throw InvariantError("negative exponent in prime_power");
  u128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= static_cast<u128>(p);
    if (acc >= (static_cast<u128>(1) << 62)) {
      throw PrecisionError("p^" + std::to_string(k) + " exceeds the 62-bit digit store");
    }
  }
  return static_cast<u64>(acc);
}

int valuation_of(i64 value, i64 p) {
  if (value == 0) throw InvariantError("valuation of integer zero");
  int v = 0;
  while (value % p == 0) {
    value /= p;
    ++v;
  }
  return v;
}

PadicNumber PadicNumber::zero(i64 p, int absolute_precision) {
  return PadicNumber(p, true, absolute_precision, 0, 0);
}

PadicNumber PadicNumber::from_parts(i64 p, int valuation, u64 unit, int precision) {
  if (precision < 1) throw InputError("p-adic precision must be >= 1");
  const u64 m = prime_power(p, precision);
  unit %= m;
  if (unit % static_cast<u64>(p) == 0) throw InvariantError("p-adic unit part divisible by p");
  return PadicNumber(p, false, valuation, precision, unit);
}

PadicNumber PadicNumber::from_rational(i64 num, i64 den, i64 p, int precision) {
  if (den == 0) throw InputError("zero denominator");
  if (p < 2) throw InputError("prime must be >= 2");
  if (precision < 1) throw InputError("p-adic precision must be >= 1");
  if (num == 0) return zero(p, precision);
  int v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  const u64 m = prime_power(p, precision);
  const u64 unit = mulmod(reduce_signed(num, m), inverse_mod(reduce_signed(den, m), m), m);
  return PadicNumber(p, false, v, precision, unit);
}

PadicNumber PadicNumber::from_integer(i64 value, i64 p, int precision) {
  return from_rational(value, 1, p, precision);
}

void PadicNumber::check_same_prime(const PadicNumber& other) const {
  if (p_ != other.p_) throw InputError("p-adic operands over different primes");
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  const u64 m = prime_power(p_, prec_);
  return PadicNumber(p_, false, val_, prec_, (m - unit_) % m);
}

PadicNumber PadicNumber::operator+(const PadicNumber& other) const {
  check_same_prime(other);
  const int abs_prec = std::min(absolute_precision(), other.absolute_precision());
  if (zero_ && other.zero_) return zero(p_, abs_prec);
  const int vm = std::min(valuation(), other.valuation());
  if (abs_prec <= vm) return zero(p_, abs_prec);
  const int k = abs_prec - vm;
  const u64 m = prime_power(p_, k);
  auto shifted = [&](const PadicNumber& x) -> u64 {
    if (x.zero_) return 0;
    const int shift = x.val_ - vm;
    if (shift >= k) return 0;
    return mulmod(x.unit_ % m, prime_power(p_, shift), m);
  };
  u64 s = (shifted(*this) + shifted(other)) % m;
  if (s == 0) return zero(p_, abs_prec);
  int v = vm;
  while (s % static_cast<u64>(p_) == 0) {
    s /= static_cast<u64>(p_);
    ++v;
  }
  return PadicNumber(p_, false, v, abs_prec - v, s);
}

PadicNumber PadicNumber::operator-(const PadicNumber& other) const { return *this + (-other); }

PadicNumber PadicNumber::operator*(const PadicNumber& other) const {
  check_same_prime(other);
  if (zero_ && other.zero_) return zero(p_, val_ + other.val_);
  if (zero_) return zero(p_, val_ + other.val_);
  if (other.zero_) return zero(p_, other.val_ + val_);
  const int prec = std::min(prec_, other.prec_);
  const u64 m = prime_power(p_, prec);
  return PadicNumber(p_, false, val_ + other.val_, prec, mulmod(unit_ % m, other.unit_ % m, m));
}

PadicNumber PadicNumber::inverse() const {
  if (zero_) {
    throw PrecisionError("inverse of zero-to-precision O(" + std::to_string(p_) + "^" +
                         std::to_string(val_) + "); raise the precision budget");
  }
  const u64 m = prime_power(p_, prec_);
  return PadicNumber(p_, false, -val_, prec_, inverse_mod(unit_, m));
}

PadicNumber PadicNumber::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  PadicNumber result = from_parts(p_, 0, 1, std::max(1, zero_ ? 1 : prec_));
  if (zero_ && exponent > 0) return zero(p_, val_ * exponent);
  PadicNumber base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

bool PadicNumber::congruent(const PadicNumber& other) const { return (*this - other).is_zero(); }

Angle PadicNumber::fractional_angle() const {
  if (absolute_precision() < 0) {
    throw PrecisionError("fractional part undetermined: element known only modulo " +
                         std::to_string(p_) + "^" + std::to_string(absolute_precision()));
  }
  if (zero_ || val_ >= 0) return Angle();
  const int k = -val_;
  const u64 m = prime_power(p_, k);
  return Angle(static_cast<i64>(unit_ % m), static_cast<i64>(m));
}

u64 PadicNumber::residue(int k) const {
  if (k <= 0) return 0;
  if (absolute_precision() < k) {
    throw PrecisionError("residue mod " + std::to_string(p_) + "^" + std::to_string(k) +
                         " needs more digits than " + std::to_string(absolute_precision()));
  }
  if (zero_) return 0;
  if (val_ < 0) throw InvariantError("residue of a non-integral p-adic number");
  if (val_ >= k) return 0;
  const u64 m = prime_power(p_, k);
  return mulmod(unit_ % m, prime_power(p_, val_), m);
}

std::string PadicNumber::str() const {
  const std::string base = std::to_string(p_);
  if (zero_) return "O(" + base + "^" + std::to_string(val_) + ")";
  return std::to_string(unit_) + "*" + base + "^" + std::to_string(val_) + " + O(" + base + "^" +
         std::to_string(val_ + prec_) + ")";
}

}  // namespace epsilocal
