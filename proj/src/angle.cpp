#include "epsilocal/angle.hpp"

#include <charconv>
#include <numeric>

#include "epsilocal/error.hpp"

namespace epsilocal {

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  const i64 g = std::gcd(a, b);
  i64 out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw InvariantError("lcm overflow");
  }
  return out < 0 ? -out : out;
}

Angle::Angle(i64 num, i64 den) {
  if (den == 0) throw InputError("angle with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  const i64 g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Angle Angle::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    i64 value = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    if (!s.empty() && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || s.empty()) {
      throw InputError("malformed angle '" + std::string(text) + "'");
    }
    return value;
  };
  if (slash == std::string_view::npos) return Angle(parse_int(text), 1);
  return Angle(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Angle Angle::operator+(const Angle& other) const {
  const i64 g = std::gcd(den_, other.den_);
  const i64 den = lcm_i64(den_, other.den_);
  const __int128 num = static_cast<__int128>(num_) * (other.den_ / g) +
                       static_cast<__int128>(other.num_) * (den_ / g);
  return Angle(static_cast<i64>(num % den), den);
}

Angle Angle::operator-() const { return Angle(den_ - num_, den_); }

Angle Angle::operator-(const Angle& other) const { return *this + (-other); }

Angle Angle::times(i64 k) const {
  const __int128 prod = static_cast<__int128>(num_) * k;
  i64 r = static_cast<i64>(prod % den_);
  return Angle(r, den_);
}

std::strong_ordering Angle::operator<=>(const Angle& other) const {
  const __int128 lhs = static_cast<__int128>(num_) * other.den_;
  const __int128 rhs = static_cast<__int128>(other.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return den_ <=> other.den_;
}

std::string Angle::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace epsilocal
