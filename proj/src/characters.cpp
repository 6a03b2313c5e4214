#include "epsilocal/characters.hpp"

#include <algorithm>

#include "epsilocal/error.hpp"

namespace epsilocal {
namespace {

i64 mod_nonneg(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Mixed-radix increment; false after the last vector.
bool next_exponents(std::vector<i64>& exps, const std::vector<i64>& orders) {
  for (std::size_t i = exps.size(); i-- > 0;) {
    if (++exps[i] < orders[i]) return true;
    exps[i] = 0;
  }
  return false;
}

void check_compatible(const MultChar& a, const MultChar& b) {
  if (!(a.tower() == b.tower()) || a.over_base() != b.over_base()) {
    throw InputError("characters live on different groups");
  }
}

}  // namespace

MultChar::MultChar(UnitQuotientPtr quotient, Angle pi_value, std::vector<i64> exponents)
    : quotient_(std::move(quotient)), pi_value_(pi_value), exponents_(std::move(exponents)) {
  const auto& orders = quotient_->orders();
  if (exponents_.size() != orders.size()) {
    throw InputError("character has " + std::to_string(exponents_.size()) +
                     " unit exponents, the quotient has " + std::to_string(orders.size()) +
                     " generators");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) exponents_[i] = mod_nonneg(exponents_[i], orders[i]);
  conductor_ = compute_conductor();
}

MultChar MultChar::trivial(UnitQuotientPtr quotient) {
  std::vector<i64> zeros(quotient->orders().size(), 0);
  return MultChar(std::move(quotient), Angle(), std::move(zeros));
}

MultChar MultChar::from_exponents(UnitQuotientPtr quotient, Angle pi_value,
                                  std::vector<i64> unit_exponents) {
  return MultChar(std::move(quotient), pi_value, std::move(unit_exponents));
}

MultChar MultChar::from_generator_values(UnitQuotientPtr quotient, Angle pi_value,
                                         const std::vector<Angle>& values) {
  const auto& orders = quotient->orders();
  if (values.size() != orders.size()) throw InputError("wrong number of generator values");
  std::vector<i64> exps;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] % values[i].den() != 0) {
      throw InvariantError("value " + values[i].str() + " has order not dividing " +
                           std::to_string(orders[i]));
    }
    exps.push_back(values[i].num() * (orders[i] / values[i].den()));
  }
  return MultChar(std::move(quotient), pi_value, std::move(exps));
}

Angle MultChar::eval_unit_key(u64 key) const {
  const auto& y = quotient_->dlog(key);
  const auto& orders = quotient_->orders();
  const i64 E = quotient_->exponent();
  __int128 acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    acc += static_cast<__int128>(y[i]) * exponents_[i] * (E / orders[i]);
  }
  return Angle(static_cast<i64>(acc % E), E);
}

Angle MultChar::eval(const ExtElement& x) const {
  if (over_base()) throw InputError("base-field character evaluated on an extension element");
  const Tower& T = tower();
  const int v = T.valuation_K(x);
  if (v == PadicNumber::kInfiniteValuation) throw PrecisionError("character evaluated at zero");
  const ExtElement u = v == 0 ? x : x * T.pi_K_power(-v);
  return pi_value_.times(v) + eval_unit_key(quotient_->ring().key_of(u));
}

Angle MultChar::eval(const PadicNumber& x) const {
  if (!over_base()) return eval(tower().from_base(x));
  if (x.is_zero()) throw PrecisionError("character evaluated at zero");
  const int v = x.valuation();
  const PadicNumber u = v == 0 ? x : x * tower().pi_F().pow(-v);
  return pi_value_.times(v) + eval_unit_key(quotient_->ring().key_of(u));
}

int MultChar::compute_conductor() const {
  for (int j = level() - 1; j >= 1; --j) {
    for (u64 g : quotient_->filtration_generators(j)) {
      if (!eval_unit_key(g).is_zero()) return j + 1;
    }
  }
  for (u64 g : quotient_->filtration_generators(0)) {
    if (!eval_unit_key(g).is_zero()) return 1;
  }
  return 0;
}

i64 MultChar::value_order() const {
  i64 out = pi_value_.order();
  const auto& orders = quotient_->orders();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    out = lcm_i64(out, Angle(exponents_[i], orders[i]).order());
  }
  return out;
}

bool MultChar::is_trivial() const {
  return pi_value_.is_zero() &&
         std::all_of(exponents_.begin(), exponents_.end(), [](i64 e) { return e == 0; });
}

MultChar MultChar::inverse() const {
  std::vector<i64> neg = exponents_;
  for (auto& e : neg) e = -e;
  return MultChar(quotient_, -pi_value_, std::move(neg));
}

MultChar MultChar::lifted(UnitQuotientPtr deeper) const {
  const ResidueRing& dr = deeper->ring();
  if (!(dr.tower() == tower()) || (dr.field() == ResidueRing::Field::base) != over_base()) {
    throw InputError("lift target is a quotient of a different group");
  }
  if (deeper->level() < level()) throw InputError("lift target is shallower than the character");
  if (deeper.get() == quotient_.get()) return *this;
  std::vector<Angle> values;
  for (u64 h : deeper->generators()) {
    values.push_back(eval_unit_key(quotient_->ring().reduce_from(dr, h)));
  }
  return from_generator_values(std::move(deeper), pi_value_, values);
}

MultChar MultChar::operator*(const MultChar& other) const {
  check_compatible(*this, other);
  if (level() < other.level()) return lifted(other.quotient_) * other;
  if (other.level() < level()) return *this * other.lifted(quotient_);
  const MultChar rhs = other.quotient_.get() == quotient_.get() ? other : other.lifted(quotient_);
  std::vector<i64> sum = exponents_;
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += rhs.exponents_[i];
  return MultChar(quotient_, pi_value_ + rhs.pi_value_, std::move(sum));
}

bool MultChar::operator==(const MultChar& other) const {
  if (!(tower() == other.tower()) || over_base() != other.over_base()) return false;
  if (level() < other.level()) return lifted(other.quotient_) == other;
  if (other.level() < level()) return *this == other.lifted(quotient_);
  const MultChar rhs = other.quotient_.get() == quotient_.get() ? other : other.lifted(quotient_);
  return pi_value_ == rhs.pi_value_ && exponents_ == rhs.exponents_;
}

bool canonical_less(const MultChar& a, const MultChar& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  if (a.unit_exponents() != b.unit_exponents()) return a.unit_exponents() < b.unit_exponents();
  return a.pi_value() < b.pi_value();
}

UnitQuotientPtr unit_quotient(const Tower& tower, ResidueRing::Field field, int level) {
  return UnitQuotient::build(ResidueRing(tower, field, level));
}

MultChar restrict_to_F(const MultChar& chi) {
  if (chi.over_base()) throw InputError("character is already on the base field");
  const Tower& T = chi.tower();
  const int L = std::max(1, (chi.level() + T.e() - 1) / T.e());
  auto qf = unit_quotient(T, ResidueRing::Field::base, L);
  std::vector<Angle> values;
  for (u64 h : qf->generators()) values.push_back(chi.eval(qf->ring().base_element(h)));
  return MultChar::from_generator_values(qf, chi.eval(T.pi_F()), values);
}

MultChar omega_character(const Tower& tower) {
  const int n = std::max(2, tower.ramification_break() + 2);
  const NormGroup group = norm_group(tower, n);
  auto qf = unit_quotient(tower, ResidueRing::Field::base, n);
  const Angle half(1, 2);
  std::vector<Angle> values;
  for (u64 h : qf->generators()) values.push_back(group.contains(0, h) ? Angle() : half);
  const Angle pi_value = group.contains(1, 1 % prime_power(tower.prime(), n)) ? Angle() : half;
  MultChar omega = MultChar::from_generator_values(qf, pi_value, values);
  for (u64 u : qf->elements()) {
    for (int v = 0; v < 2; ++v) {
      const bool kernel = (pi_value.times(v) + omega.eval_unit_key(u)).is_zero();
      if (kernel != group.contains(v, u)) {
        throw InvariantError("quadratic character disagrees with the norm group");
      }
    }
  }
  return omega;
}

std::vector<MultChar> enumerate_symplectic(const Tower& tower, int max_conductor) {
  if (max_conductor < 1) throw InputError("max conductor must be >= 1");
  const MultChar omega = omega_character(tower);
  const int L = std::max(1, (max_conductor + tower.e() - 1) / tower.e());
  if (omega.conductor() > L) return {};
  auto qk = unit_quotient(tower, ResidueRing::Field::extension, max_conductor);
  auto qf = unit_quotient(tower, ResidueRing::Field::base, L);
  const ResidueRing& ring = qk->ring();

  std::vector<std::vector<i64>> f_coords;
  std::vector<Angle> f_targets;
  for (u64 h : qf->generators()) {
    const PadicNumber x = qf->ring().base_element(h);
    f_coords.push_back(qk->dlog(ring.key_of(tower.from_base(x))));
    f_targets.push_back(omega.eval(x));
  }
  const ExtElement w = tower.from_base(tower.pi_F()) * tower.pi_K_power(-tower.e());
  const std::vector<i64> w_coords = qk->dlog(ring.key_of(w));
  const Angle omega_pi = omega.eval(tower.pi_F());

  const auto& orders = qk->orders();
  const i64 E = qk->exponent();
  auto pair_angle = [&](const std::vector<i64>& y, const std::vector<i64>& exps) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      acc += static_cast<__int128>(y[i]) * exps[i] * (E / orders[i]);
    }
    return Angle(static_cast<i64>(acc % E), E);
  };

  std::vector<MultChar> out;
  std::vector<i64> exps(orders.size(), 0);
  do {
    bool match = true;
    for (std::size_t j = 0; j < f_coords.size() && match; ++j) {
      match = pair_angle(f_coords[j], exps) == f_targets[j];
    }
    if (!match) continue;
    const Angle r = omega_pi - pair_angle(w_coords, exps);
    if (tower.e() == 1) {
      out.push_back(MultChar::from_exponents(qk, r, exps));
    } else {
      const Angle half_r(r.num(), 2 * r.den());
      out.push_back(MultChar::from_exponents(qk, half_r, exps));
      out.push_back(MultChar::from_exponents(qk, half_r + Angle(1, 2), exps));
    }
  } while (next_exponents(exps, orders));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

MultChar random_character(UnitQuotientPtr quotient, std::mt19937_64& rng, i64 pi_order) {
  std::vector<i64> exps;
  for (i64 d : quotient->orders()) exps.push_back(std::uniform_int_distribution<i64>(0, d - 1)(rng));
  const i64 k = std::uniform_int_distribution<i64>(0, pi_order - 1)(rng);
  return MultChar::from_exponents(std::move(quotient), Angle(k, pi_order), std::move(exps));
}

// ---------------------------------------------------------------------------

AddChar::AddChar(Tower tower, ExtElement c, int n_F)
    : tower_(std::move(tower)), c_(std::move(c)), n_F_(n_F), conductor_(0), trivial_on_F_(false) {
  if (c_.is_zero()) throw InputError("additive twist must be nonzero");
  if (c_.core_ptr() != tower_.core()) throw InputError("additive twist from a different tower");
  conductor_ = tower_.e() * n_F_ + tower_.valuation_K(c_) + tower_.different_exponent();
  trivial_on_F_ = c_.trace().is_zero();
}

AddChar AddChar::make(const Tower& tower, ExtElement c, int base_conductor) {
  return AddChar(tower, std::move(c), base_conductor);
}

Angle AddChar::eval(const ExtElement& x) const {
  if (x.is_zero()) return Angle();
  const PadicNumber scale = tower_.base(tower_.prime()).pow(n_F_);
  return ((c_ * x).trace() * scale).fractional_angle();
}

int AddChar::conductor_by_scan() const {
  auto trivial_on = [&](int k) {
    const ExtElement base = tower_.pi_K_power(-k);
    return eval(base).is_zero() && eval(base * tower_.theta()).is_zero();
  };
  const int start = conductor_ - 8;
  if (!trivial_on(start)) throw InvariantError("additive character nontrivial far below its conductor");
  for (int k = start + 1; k <= conductor_ + 8; ++k) {
    if (!trivial_on(k)) return k - 1;
  }
  throw InvariantError("additive character trivial far above its conductor");
}

std::optional<AddChar> trace_zero_psi(const Tower& tower, int n) {
  const int d = tower.different_exponent();
  const int rem = n - 2 * d;
  if (rem % tower.e() != 0) return std::nullopt;
  const int j = rem / tower.e();
  const ExtElement c = tower.trace_zero_generator().scaled(tower.base(tower.prime()).pow(j));
  return AddChar::make(tower, c, 0);
}

AddChar uniformizer_psi(const Tower& tower, int n) {
  return AddChar::make(tower, tower.pi_K_power(n - tower.different_exponent()), 0);
}

}  // namespace epsilocal
