#pragma once

#include <limits>
#include <string>

#include "epsilocal/angle.hpp"

namespace epsilocal {

/// Why a computation needs a given number of p-adic digits.
struct PrecisionBudget {
  int required_digits = 1;
  std::string reason;

  PrecisionBudget(int digits, std::string why);
  /// Throws PrecisionError when `available` digits cannot cover the budget.
  void require(int available) const;
};

/// Largest N with p^N < 2^62; the unit digits of a PadicNumber live below that.
int max_precision(i64 p);
/// p^k as an unsigned integer; throws PrecisionError past 2^62.
u64 prime_power(i64 p, int k);
/// Exponent of p in a nonzero integer.
int valuation_of(i64 value, i64 p);

/// An element of Q_p known modulo p^(v+N): p^v * unit with unit a p-adic unit
/// carried as an integer in [1, p^N).
///
/// A separate zero-to-precision state represents "0 mod p^A"; it never carries
/// a valuation, so it cannot be confused with a nonzero element of high
/// valuation. Results never claim more digits than the operands justify.
class PadicNumber {
 public:
  static constexpr int kInfiniteValuation = std::numeric_limits<int>::max() / 4;

  static PadicNumber from_rational(i64 num, i64 den, i64 p, int precision);
  static PadicNumber from_integer(i64 value, i64 p, int precision);
  static PadicNumber zero(i64 p, int absolute_precision);
  /// p^valuation * unit; unit must be prime to p.
  static PadicNumber from_parts(i64 p, int valuation, u64 unit, int precision);

  i64 prime() const { return p_; }
  bool is_zero() const { return zero_; }
  /// kInfiniteValuation for zero-to-precision.
  int valuation() const { return zero_ ? kInfiniteValuation : val_; }
  /// Count of significant digits; 0 for zero-to-precision.
  int precision() const { return zero_ ? 0 : prec_; }
  /// The element is known modulo p^absolute_precision().
  int absolute_precision() const { return zero_ ? val_ : val_ + prec_; }
  u64 unit() const { return unit_; }

  PadicNumber operator+(const PadicNumber& other) const;
  PadicNumber operator-(const PadicNumber& other) const;
  PadicNumber operator*(const PadicNumber& other) const;
  PadicNumber operator-() const;
  PadicNumber inverse() const;
  PadicNumber pow(int exponent) const;

  /// True when the difference is zero to the common precision.
  bool congruent(const PadicNumber& other) const;

  /// Image in Q_p/Z_p as a reduced fraction with p-power denominator.
  Angle fractional_angle() const;

  /// The element modulo p^k as an integer in [0, p^k); requires it be integral.
  u64 residue(int k) const;

  /// e.g. "3*2^-1 + O(2^7)" or "O(2^5)".
  std::string str() const;

 private:
  PadicNumber(i64 p, bool zero, int val, int prec, u64 unit)
      : p_(p), zero_(zero), val_(val), prec_(prec), unit_(unit) {}
  void check_same_prime(const PadicNumber& other) const;

  i64 p_ = 2;
  bool zero_ = true;
  int val_ = 0;   // valuation, or the absolute precision when zero_
  int prec_ = 0;  // relative precision
  u64 unit_ = 0;
};

}  // namespace epsilocal
