#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace epsilocal {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// An element k/n of Q/Z, always stored reduced with 0 <= k < n.
///
/// Angles are the exact encoding of roots of unity: the angle k/n stands for
/// exp(2*pi*i*k/n). Character values are angles, so group operations on
/// values are additions here.
class Angle {
 public:
  constexpr Angle() = default;
  Angle(i64 num, i64 den);

  /// Parses "k/n" or "k" (the latter meaning k/1 = 0).
  static Angle parse(std::string_view text);

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  /// Multiplicative order of the root of unity.
  i64 order() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Angle operator+(const Angle& other) const;
  Angle operator-(const Angle& other) const;
  Angle operator-() const;
  Angle& operator+=(const Angle& other) { return *this = *this + other; }
  Angle& operator-=(const Angle& other) { return *this = *this - other; }
  Angle times(i64 k) const;

  bool operator==(const Angle& other) const = default;
  /// Orders by the representative in [0, 1).
  std::strong_ordering operator<=>(const Angle& other) const;

  std::string str() const;

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);

}  // namespace epsilocal
