#include "epsilocal/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "epsilocal/error.hpp"

namespace epsilocal {
namespace {

using i128 = __int128;

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<i64> substitute_power(const std::vector<i64>& poly, i64 k) {
  std::vector<i64> out(static_cast<std::size_t>((poly.size() - 1) * k + 1), 0);
  for (std::size_t i = 0; i < poly.size(); ++i) out[i * static_cast<std::size_t>(k)] = poly[i];
  return out;
}

// Exact quotient of num by a monic divisor.
std::vector<i64> exact_divide(std::vector<i64> num, const std::vector<i64>& div) {
  const std::size_t dd = div.size() - 1;
  std::vector<i64> quo(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const i64 c = num[i];
    quo[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) throw InvariantError("inexact cyclotomic division");
  }
  return quo;
}

i64 to_i64(i128 v) {
  if (v > static_cast<i128>(std::numeric_limits<i64>::max()) ||
      v < static_cast<i128>(std::numeric_limits<i64>::min())) {
    throw InvariantError("cyclotomic coefficient overflow");
  }
  return static_cast<i64>(v);
}

i64 checked_mul(i64 a, i64 b) {
  i64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InvariantError("cyclotomic arithmetic overflow");
  return out;
}

std::shared_ptr<const std::vector<i64>> phi_for(i64 n) {
  return std::make_shared<const std::vector<i64>>(cyclotomic_polynomial(n));
}

}  // namespace

std::vector<i64> cyclotomic_polynomial(i64 n) {
  if (n < 1) throw InputError("cyclotomic conductor must be positive");
  std::vector<i64> poly = {-1, 1};
  i64 rad = 1;
  for (i64 q : prime_factors(n)) {
    poly = exact_divide(substitute_power(poly, q), poly);
    rad *= q;
  }
  return n == rad ? poly : substitute_power(poly, n / rad);
}

i64 euler_phi(i64 n) {
  i64 out = n;
  for (i64 q : prime_factors(n)) out = out / q * (q - 1);
  return out;
}

CycNumber::CycNumber(i64 conductor) : CycNumber(conductor, phi_for(conductor)) {}

CycNumber::CycNumber(i64 n, std::shared_ptr<const std::vector<i64>> phi)
    : n_(n), phi_(std::move(phi)), num_(phi_->size() - 1, 0), den_(1) {}

CycNumber CycNumber::from_raw(i64 n, std::shared_ptr<const std::vector<i64>> phi,
                              std::vector<i128> raw, i64 den) {
  const std::size_t deg = phi->size() - 1;
  std::vector<std::pair<std::size_t, i64>> sparse;
  for (std::size_t j = 0; j < deg; ++j) {
    if ((*phi)[j] != 0) sparse.emplace_back(j, (*phi)[j]);
  }
  for (std::size_t i = raw.size(); i-- > deg;) {
    const i128 c = raw[i];
    if (c == 0) continue;
    raw[i] = 0;
    for (const auto& [j, coef] : sparse) raw[i - deg + j] -= c * coef;
  }
  CycNumber out(n, std::move(phi));
  for (std::size_t j = 0; j < deg && j < raw.size(); ++j) out.num_[j] = to_i64(raw[j]);
  out.den_ = den;
  out.normalize();
  return out;
}

void CycNumber::normalize() {
  if (den_ == 0) throw InvariantError("cyclotomic number with zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  i64 g = den_;
  for (i64 c : num_) g = std::gcd(g, c);
  if (g > 1) {
    den_ /= g;
    for (auto& c : num_) c /= g;
  }
  if (is_zero()) den_ = 1;
}

bool CycNumber::is_zero() const {
  for (i64 c : num_) {
    if (c != 0) return false;
  }
  return true;
}

CycNumber CycNumber::from_rational(i64 num, i64 den, i64 conductor) {
  CycNumber out(conductor);
  if (out.num_.empty()) throw InvariantError("empty cyclotomic basis");
  out.num_[0] = num;
  out.den_ = den;
  out.normalize();
  return out;
}

CycNumber CycNumber::root_of_unity(const Angle& a, i64 conductor) {
  if (conductor % a.den() != 0) {
    throw InputError("root of unity of order " + std::to_string(a.den()) +
                     " does not lie in Q(zeta_" + std::to_string(conductor) + ")");
  }
  const i64 k = a.num() * (conductor / a.den());
  std::vector<i128> raw(static_cast<std::size_t>(k + 1), 0);
  raw[static_cast<std::size_t>(k)] = 1;
  return from_raw(conductor, phi_for(conductor), std::move(raw), 1);
}

CycNumber CycNumber::lifted(i64 m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw InputError("cannot lift Q(zeta_n) into a field not containing it");
  const i64 step = m / n_;
  std::vector<i128> raw(num_.empty() ? 1 : (num_.size() - 1) * step + 1, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) raw[i * static_cast<std::size_t>(step)] = num_[i];
  return from_raw(m, phi_for(m), std::move(raw), den_);
}

CycNumber CycNumber::operator+(const CycNumber& other) const {
  const i64 m = lcm_i64(n_, other.n_);
  if (m != n_ || m != other.n_) return lifted(m) + other.lifted(m);
  const i64 den = lcm_i64(den_, other.den_);
  CycNumber out(n_, phi_);
  const i64 fa = den / den_;
  const i64 fb = den / other.den_;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const i128 s = static_cast<i128>(num_[i]) * fa + static_cast<i128>(other.num_[i]) * fb;
    out.num_[i] = to_i64(s);
  }
  out.den_ = den;
  out.normalize();
  return out;
}

CycNumber CycNumber::operator-() const {
  CycNumber out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

CycNumber CycNumber::operator-(const CycNumber& other) const { return *this + (-other); }

CycNumber CycNumber::operator*(const CycNumber& other) const {
  const i64 m = lcm_i64(n_, other.n_);
  if (m != n_ || m != other.n_) return lifted(m) * other.lifted(m);
  std::vector<std::pair<std::size_t, i64>> rhs;
  for (std::size_t j = 0; j < other.num_.size(); ++j) {
    if (other.num_[j] != 0) rhs.emplace_back(j, other.num_[j]);
  }
  std::vector<i128> raw(num_.size() * 2, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    for (const auto& [j, c] : rhs) raw[i + j] += static_cast<i128>(num_[i]) * c;
  }
  return from_raw(n_, phi_, std::move(raw), checked_mul(den_, other.den_));
}

CycNumber CycNumber::scaled(i64 num, i64 den) const {
  if (den == 0) throw InputError("scaling by a fraction with zero denominator");
  CycNumber out = *this;
  const i64 g = std::gcd(num, den);
  num /= (g == 0 ? 1 : g);
  den /= (g == 0 ? 1 : g);
  for (auto& c : out.num_) c = checked_mul(c, num);
  out.den_ = checked_mul(out.den_, den);
  out.normalize();
  return out;
}

CycNumber CycNumber::conj() const {
  std::vector<i128> raw(static_cast<std::size_t>(n_), 0);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    raw[static_cast<std::size_t>((n_ - static_cast<i64>(i)) % n_)] += num_[i];
  }
  return from_raw(n_, phi_, std::move(raw), den_);
}

CycNumber CycNumber::rotated(const Angle& a) const {
  const i64 m = lcm_i64(n_, a.den());
  if (m != n_) return lifted(m).rotated(a);
  const std::size_t k = static_cast<std::size_t>(a.num() * (n_ / a.den()));
  std::vector<i128> raw(num_.size() + k, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) raw[i + k] = num_[i];
  return from_raw(n_, phi_, std::move(raw), den_);
}

bool CycNumber::operator==(const CycNumber& other) const {
  if (n_ != other.n_) {
    const i64 m = lcm_i64(n_, other.n_);
    return lifted(m) == other.lifted(m);
  }
  return den_ == other.den_ && num_ == other.num_;
}

std::optional<Angle> CycNumber::classify_root_of_unity() const {
  if (den_ != 1 || is_zero()) return std::nullopt;
  const std::size_t deg = num_.size();
  std::vector<i64> cur(deg, 0);
  cur[0] = 1;
  std::vector<i64> neg(deg);
  for (i64 k = 0; k < n_; ++k) {
    if (cur == num_) return Angle(k, n_);
    if (n_ % 2 == 1) {
      for (std::size_t j = 0; j < deg; ++j) neg[j] = -cur[j];
      if (neg == num_) return Angle(2 * k + n_, 2 * n_);
    }
    // cur *= zeta
    const i64 top = cur[deg - 1];
    for (std::size_t j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * (*phi_)[j];
    }
  }
  return std::nullopt;
}

std::complex<double> CycNumber::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n_);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    acc += static_cast<double>(num_[i]) * std::polar(1.0, step * static_cast<double>(i));
  }
  return acc / static_cast<double>(den_);
}

std::string CycNumber::coefficient_string(std::size_t i) const {
  const i64 c = num_.at(i);
  const i64 g = std::gcd(c, den_);
  const i64 n = c / (g == 0 ? 1 : g);
  const i64 d = den_ / (g == 0 ? den_ : g);
  if (c == 0) return "0";
  return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
}

CycAccumulator::CycAccumulator(i64 conductor)
    : n_(conductor), counts_(static_cast<std::size_t>(conductor), 0) {}

void CycAccumulator::add(const Angle& a, i64 count) {
  if (n_ % a.den() != 0) {
    throw InvariantError("accumulator conductor " + std::to_string(n_) +
                         " does not contain a root of order " + std::to_string(a.den()));
  }
  counts_[static_cast<std::size_t>(a.num() * (n_ / a.den()))] += count;
}

CycNumber CycAccumulator::value() const {
  std::vector<i128> raw(counts_.begin(), counts_.end());
  return CycNumber::from_raw(n_, phi_for(n_), std::move(raw), 1);
}

int legendre(i64 a, i64 p) {
  i64 r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  i128 result = 1, base = r;
  i64 e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

CycNumber quadratic_gauss_sum(i64 p) {
  if (p < 3 || p % 2 == 0) throw InputError("quadratic Gauss sum needs an odd prime");
  CycAccumulator acc(p);
  for (i64 x = 1; x < p; ++x) acc.add(Angle(x, p), legendre(x, p));
  return acc.value();
}

i64 sqrt_conductor(i64 p) {
  if (p == 2) return 8;
  return p % 4 == 1 ? p : 4 * p;
}

CycNumber sqrt_prime_power(i64 p, int s) {
  if (s < 0) throw InputError("negative exponent in sqrt_prime_power");
  i64 half = 1;
  for (int i = 0; i < s / 2; ++i) half = checked_mul(half, p);
  if (s % 2 == 0) return CycNumber::from_rational(half, 1);
  CycNumber root(1);
  if (p == 2) {
    root = CycNumber::root_of_unity(Angle(1, 8), 8) + CycNumber::root_of_unity(Angle(7, 8), 8);
  } else if (p % 4 == 1) {
    root = quadratic_gauss_sum(p);
  } else {
    root = quadratic_gauss_sum(p).rotated(Angle(3, 4));
  }
  return root.scaled(half);
}

CycNumber sqrt_q(i64 q) {
  if (q < 2) throw InputError("sqrt_q needs a prime power >= 2");
  const auto primes = prime_factors(q);
  if (primes.size() != 1) throw InputError("sqrt_q needs a prime power");
  const i64 p = primes.front();
  int s = 0;
  while (q % p == 0) {
    q /= p;
    ++s;
  }
  return sqrt_prime_power(p, s);
}

}  // namespace epsilocal
