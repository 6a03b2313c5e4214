#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsilocal/angle.hpp"

namespace epsilocal {

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<i64> cyclotomic_polynomial(i64 n);
i64 euler_phi(i64 n);

/// An exact element of Q(zeta_n), zeta_n = exp(2*pi*i/n).
///
/// Stored as integer numerators over one positive common denominator, on the
/// power basis 1, zeta, ..., zeta^(phi(n)-1) reduced modulo Phi_n. The form is
/// canonical for a fixed n, so equality at a common conductor is coefficient
/// equality. Binary operations lift both operands to lcm of the conductors.
class CycNumber {
 public:
  explicit CycNumber(i64 conductor = 1);

  static CycNumber from_rational(i64 num, i64 den, i64 conductor = 1);
  /// The root of unity exp(2*pi*i*a) in Q(zeta_n); requires a.order() | n.
  static CycNumber root_of_unity(const Angle& a, i64 conductor);

  i64 conductor() const { return n_; }
  std::span<const i64> numerators() const { return num_; }
  i64 denominator() const { return den_; }
  bool is_zero() const;

  /// The same number viewed in Q(zeta_m); requires conductor() | m.
  CycNumber lifted(i64 m) const;

  CycNumber operator+(const CycNumber& other) const;
  CycNumber operator-(const CycNumber& other) const;
  CycNumber operator*(const CycNumber& other) const;
  CycNumber operator-() const;
  /// Multiplication by num/den.
  CycNumber scaled(i64 num, i64 den = 1) const;
  /// Complex conjugation, zeta -> zeta^-1.
  CycNumber conj() const;
  /// Multiplication by the root of unity exp(2*pi*i*a), lifting if needed.
  CycNumber rotated(const Angle& a) const;

  bool operator==(const CycNumber& other) const;

  /// The angle a with this == exp(2*pi*i*a), if this is a root of unity.
  std::optional<Angle> classify_root_of_unity() const;

  /// Numerical embedding; for cross-checks only.
  std::complex<double> to_complex() const;

  /// Coefficient i as a reduced rational string such as "-3/2".
  std::string coefficient_string(std::size_t i) const;

 private:
  friend class CycAccumulator;
  CycNumber(i64 n, std::shared_ptr<const std::vector<i64>> phi);
  static CycNumber from_raw(i64 n, std::shared_ptr<const std::vector<i64>> phi,
                            std::vector<__int128> raw, i64 den);
  void normalize();
  std::size_t degree() const { return num_.size(); }

  i64 n_;
  std::shared_ptr<const std::vector<i64>> phi_;
  std::vector<i64> num_;
  i64 den_ = 1;
};

/// Sums many roots of unity at a fixed conductor before one reduction.
class CycAccumulator {
 public:
  explicit CycAccumulator(i64 conductor);
  void add(const Angle& a, i64 count = 1);
  i64 conductor() const { return n_; }
  CycNumber value() const;

 private:
  i64 n_;
  std::vector<i64> counts_;
};

/// The positive real square root of p^s, exactly.
///
/// sqrt(2) is zeta_8 + zeta_8^-1; for odd p the quadratic Gauss sum
/// sum (x|p) zeta_p^x is sqrt(p) when p = 1 mod 4 and i*sqrt(p) when p = 3 mod 4.
CycNumber sqrt_prime_power(i64 p, int s);
/// sqrt_prime_power after factoring q as a prime power.
CycNumber sqrt_q(i64 q);
/// Smallest conductor containing sqrt(p).
i64 sqrt_conductor(i64 p);

/// Legendre symbol (a|p) for odd prime p, in {-1, 0, 1}.
int legendre(i64 a, i64 p);
/// Sum over x in F_p^* of (x|p) zeta_p^x, exactly.
CycNumber quadratic_gauss_sum(i64 p);

}  // namespace epsilocal
