#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epsilocal/padic.hpp"

namespace epsilocal {

enum class ExtensionKind { unramified, tame, wild };
std::string to_string(ExtensionKind kind);

/// A coefficient of the defining polynomial, kept as the rational the user gave.
struct Rational {
  i64 num = 0;
  i64 den = 1;
  static Rational parse(const std::string& text);
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

/// Shared immutable data of a quadratic extension K = Q_p[theta]/(theta^2 + a1 theta + a0).
struct TowerCore {
  i64 p = 2;
  int precision = 1;
  bool ramified = false;
  Rational a1_q, a0_q;
  PadicNumber a1 = PadicNumber::zero(2, 1);
  PadicNumber a0 = PadicNumber::zero(2, 1);
};

/// x0 + x1*theta in K. Elements of different towers never mix.
class ExtElement {
 public:
  ExtElement(std::shared_ptr<const TowerCore> core, PadicNumber x0, PadicNumber x1);

  const PadicNumber& x0() const { return x0_; }
  const PadicNumber& x1() const { return x1_; }
  const TowerCore& core() const { return *core_; }
  const std::shared_ptr<const TowerCore>& core_ptr() const { return core_; }

  ExtElement operator+(const ExtElement& other) const;
  ExtElement operator-(const ExtElement& other) const;
  ExtElement operator*(const ExtElement& other) const;
  ExtElement operator-() const;
  /// The nontrivial automorphism, theta -> -a1 - theta.
  ExtElement sigma() const;
  PadicNumber norm() const;
  PadicNumber trace() const;
  ExtElement inverse() const;
  ExtElement pow(int exponent) const;
  ExtElement scaled(const PadicNumber& a) const;
  bool is_zero() const { return x0_.is_zero() && x1_.is_zero(); }

  std::string str() const;

 private:
  void check_same_tower(const ExtElement& other) const;

  std::shared_ptr<const TowerCore> core_;
  PadicNumber x0_;
  PadicNumber x1_;
};

/// A quadratic extension K/Q_p together with its cached invariants.
///
/// Two constructions are accepted: an Eisenstein polynomial (v(a0) = 1,
/// v(a1) >= 1), where theta is a uniformizer of K and pi_F := N(theta); or a
/// polynomial with unit coefficients irreducible mod p, giving the unramified
/// extension with pi_K = pi_F = p. Either way O_K = Z_p[theta].
class Tower {
 public:
  static Tower make(i64 p, Rational a1, Rational a0, int precision = 0);

  i64 prime() const { return core_->p; }
  int precision() const { return core_->precision; }
  bool ramified() const { return core_->ramified; }
  ExtensionKind kind() const { return kind_; }
  int e() const { return core_->ramified ? 2 : 1; }
  int f() const { return core_->ramified ? 1 : 2; }
  i64 q_F() const { return core_->p; }
  i64 q_K() const { return core_->ramified ? core_->p : core_->p * core_->p; }
  Rational a1() const { return core_->a1_q; }
  Rational a0() const { return core_->a0_q; }
  /// pi_K^2 = -pi_F holds exactly (a1 = 0 in the ramified case).
  bool trace_zero_uniformizer() const { return core_->ramified && core_->a1.is_zero(); }

  /// v_K(f'(theta)).
  int different_exponent() const { return different_; }
  /// The lower-numbering break t: G_t = G and G_{t+1} = 1.
  int ramification_break() const { return break_; }

  /// A copy whose elements carry a different number of p-adic digits.
  Tower with_precision(int precision) const;

  PadicNumber base(i64 num, i64 den = 1) const;
  ExtElement element(PadicNumber x0, PadicNumber x1) const;
  ExtElement from_base(const PadicNumber& x) const;
  ExtElement from_rationals(i64 n0, i64 d0, i64 n1 = 0, i64 d1 = 1) const;
  ExtElement one() const { return from_rationals(1, 1); }
  ExtElement theta() const { return from_rationals(0, 1, 1, 1); }
  ExtElement pi_K() const;
  ExtElement pi_K_power(int k) const;
  /// N_{K/F}(pi_K) in the ramified case, p otherwise.
  PadicNumber pi_F() const;
  /// 2*theta + a1, a nonzero element of trace zero.
  ExtElement trace_zero_generator() const;

  /// v_K; PadicNumber::kInfiniteValuation for zero-to-precision.
  int valuation_K(const ExtElement& x) const;
  /// v_F(x) for x in the base field.
  int valuation_F(const PadicNumber& x) const { return x.valuation(); }

  /// One lift per residue class of O_K/P_K, zero first, in key order.
  std::vector<ExtElement> residue_representatives() const;

  /// t from min over alpha of v_K(sigma(alpha) - alpha), by enumeration of
  /// O_K modulo a power of P_K. Independent of the different.
  int ramification_break_by_enumeration() const;

  const std::shared_ptr<const TowerCore>& core() const { return core_; }
  bool operator==(const Tower& other) const;

 private:
  std::shared_ptr<const TowerCore> core_;
  ExtensionKind kind_ = ExtensionKind::unramified;
  int different_ = 0;
  int break_ = -1;
};

/// O/P^m for O the integers of K (extension) or of F = Q_p (base), with
/// elements encoded as integer keys c0 + mod0*c1.
class ResidueRing {
 public:
  enum class Field { base, extension };

  ResidueRing(Tower tower, Field field, int level);

  const Tower& tower() const { return tower_; }
  Field field() const { return field_; }
  int level() const { return level_; }
  u64 size() const { return mod0_ * mod1_; }
  /// Residue field cardinality.
  i64 residue_size() const;
  /// F_p-dimension of the residue field.
  int residue_degree() const { return field_ == Field::extension ? tower_.f() : 1; }

  u64 encode(u64 c0, u64 c1) const { return (c0 % mod0_) + mod0_ * (c1 % mod1_); }
  u64 coord0(u64 key) const { return key % mod0_; }
  u64 coord1(u64 key) const { return key / mod0_; }
  /// The image of a key of a deeper ring over the same field.
  u64 reduce_from(const ResidueRing& deeper, u64 key) const {
    return encode(deeper.coord0(key), deeper.coord1(key));
  }
  u64 one() const { return encode(1, 0); }
  u64 add(u64 a, u64 b) const;
  u64 sub(u64 a, u64 b) const;
  u64 mul(u64 a, u64 b) const;
  u64 power(u64 a, u64 e) const;

  /// Valuation of the residue, capped at level().
  int valuation(u64 key) const;
  bool is_unit(u64 key) const { return valuation(key) == 0; }
  /// key lies in U^j, i.e. key - 1 in P^j.
  bool in_unit_level(u64 key, int j) const { return valuation(sub(key, one())) >= j; }

  u64 key_of(const ExtElement& x) const;
  u64 key_of(const PadicNumber& x) const;
  ExtElement ext_element(u64 key) const;
  PadicNumber base_element(u64 key) const;

  /// Key of pi^j * eps_i, eps_i running over an F_p-basis of the residue field.
  u64 uniformizer_basis(int j, int i) const;
  /// A unit whose residue generates the cyclic group of the residue field.
  u64 residue_generator() const;

 private:
  Tower tower_;
  Field field_;
  int level_;
  int hmax_ = 0;
  u64 mod0_ = 1, mod1_ = 1, modh_ = 1;
  u64 a1_ = 0, a0_ = 0;
};

/// The image of N_{K/F} in F^x / (U_F^n * pi_F^{2Z}), as pairs
/// (v_F mod 2, unit residue mod p^n).
struct NormGroup {
  int level = 1;
  std::set<std::pair<int, u64>> members;
  u64 ambient_order = 0;
  bool contains(int parity, u64 unit_residue) const;
  bool contains(const PadicNumber& x, const Tower& tower) const;
  /// Index in the ambient group; 2 for any quadratic extension once n >= a(omega).
  u64 index() const { return ambient_order / members.size(); }
};

/// Norms of every coset representative of K^x / U_K^{e n}; throws
/// InvariantError unless the index is exactly 2.
NormGroup norm_group(const Tower& tower, int level);

/// Decomposes x in F^x as pi_F^v * u; returns (v, u).
std::pair<int, PadicNumber> split_uniformizer(const PadicNumber& x, const Tower& tower);

struct CatalogEntry {
  std::string name;
  Tower tower;
};

/// One defining polynomial per isomorphism class of quadratic extension of
/// Q_p: seven for p = 2, three for odd p. Distinctness is checked through the
/// (t, norm group) fingerprint.
std::vector<CatalogEntry> field_catalog(i64 p, int precision = 0);

bool is_prime(i64 n);
/// Digits used when a tower is built without an explicit precision.
int default_precision(i64 p);

}  // namespace epsilocal
