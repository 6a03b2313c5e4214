#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "epsilocal/abelian_group.hpp"

namespace epsilocal {

/// A character of K^x / U_K^m (or of F^x / U_F^m when built over a base-field
/// quotient), with values in Q/Z.
///
/// Determined by its value at the chosen uniformizer (pi_K, resp. pi_F) and by
/// exponents e_i: the value at the i-th generator of U/U^m is e_i / d_i.
class MultChar {
 public:
  static MultChar trivial(UnitQuotientPtr quotient);
  static MultChar from_exponents(UnitQuotientPtr quotient, Angle pi_value,
                                 std::vector<i64> unit_exponents);
  /// Values at the generators; each must have order dividing the generator's.
  static MultChar from_generator_values(UnitQuotientPtr quotient, Angle pi_value,
                                        const std::vector<Angle>& values);

  const UnitQuotient& quotient() const { return *quotient_; }
  const UnitQuotientPtr& quotient_ptr() const { return quotient_; }
  const Tower& tower() const { return quotient_->ring().tower(); }
  int level() const { return quotient_->level(); }
  bool over_base() const { return quotient_->ring().field() == ResidueRing::Field::base; }
  const Angle& pi_value() const { return pi_value_; }
  const std::vector<i64>& unit_exponents() const { return exponents_; }

  Angle eval_unit_key(u64 key) const;
  Angle eval(const ExtElement& x) const;
  Angle eval(const PadicNumber& x) const;

  /// a(chi): least a with chi trivial on U^a; never exceeds level().
  int conductor() const { return conductor_; }
  /// lcm of the orders of all values.
  i64 value_order() const;
  bool is_trivial() const;

  MultChar inverse() const;
  /// The same character on a deeper quotient over the same field.
  MultChar lifted(UnitQuotientPtr deeper) const;
  /// Pointwise product; the shallower factor is lifted to the deeper quotient.
  MultChar operator*(const MultChar& other) const;
  bool operator==(const MultChar& other) const;

 private:
  MultChar(UnitQuotientPtr quotient, Angle pi_value, std::vector<i64> exponents);
  int compute_conductor() const;

  UnitQuotientPtr quotient_;
  Angle pi_value_;
  std::vector<i64> exponents_;
  int conductor_ = 0;
};

/// Orders characters by conductor, then unit exponents, then pi value.
bool canonical_less(const MultChar& a, const MultChar& b);

/// Unit quotient of K (extension) or F (base) at a level.
UnitQuotientPtr unit_quotient(const Tower& tower, ResidueRing::Field field, int level);

/// chi restricted to F^x, a character of F^x / U_F^L with L = ceil(m / e).
MultChar restrict_to_F(const MultChar& chi);

/// The quadratic character of F^x cut out by K, read off the norm group.
/// Built at a level one above t + 1 so that its conductor is measured, not assumed.
MultChar omega_character(const Tower& tower);

/// Every character of K^x / U_K^M restricting to omega on F^x, canonically
/// sorted. chi(pi_K) is solved from e * chi(pi_K) + chi(w) = omega(pi_F),
/// where pi_F = pi_K^e w.
std::vector<MultChar> enumerate_symplectic(const Tower& tower, int max_conductor);

/// A character of K^x / U_K^m with uniformly random unit exponents and pi value
/// of order dividing pi_order.
MultChar random_character(UnitQuotientPtr quotient, std::mt19937_64& rng, i64 pi_order);

/// psi(x) = psi_F(Tr(c x)) with psi_F(y) = lambda(p^{n_F} y), lambda the
/// canonical map Q_p -> Q_p/Z_p; psi_F has conductor n_F.
class AddChar {
 public:
  static AddChar make(const Tower& tower, ExtElement c, int base_conductor);

  const Tower& tower() const { return tower_; }
  const ExtElement& twist() const { return c_; }
  int base_conductor() const { return n_F_; }
  /// e * n_F + v_K(c) + d.
  int conductor() const { return conductor_; }
  /// Largest n with psi trivial on P_K^{-n}, by direct evaluation.
  int conductor_by_scan() const;
  bool trivial_on_F() const { return trivial_on_F_; }

  Angle eval(const ExtElement& x) const;
  Angle eval(const PadicNumber& x) const { return eval(tower_.from_base(x)); }

 private:
  AddChar(Tower tower, ExtElement c, int n_F);

  Tower tower_;
  ExtElement c_;
  int n_F_;
  int conductor_;
  bool trivial_on_F_;
};

/// Trace-zero twist (2 theta + a1) p^j with psi_F of conductor 0 achieving
/// conductor n, if the parity of n allows one.
std::optional<AddChar> trace_zero_psi(const Tower& tower, int n);
/// psi with twist pi_K^{n - d} and psi_F of conductor 0; any n is reachable.
AddChar uniformizer_psi(const Tower& tower, int n);

}  // namespace epsilocal
