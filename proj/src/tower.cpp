#include "epsilocal/tower.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "epsilocal/cyclotomic.hpp"
#include "epsilocal/error.hpp"

namespace epsilocal {
namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

int ceil_div(int a, int b) { return (a + b - 1) / b; }

int u64_valuation(u64 x, i64 p) {
  int v = 0;
  while (x % static_cast<u64>(p) == 0) {
    x /= static_cast<u64>(p);
    ++v;
  }
  return v;
}

i64 parse_i64(std::string_view s, const std::string& whole) {
  i64 value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw InputError("malformed rational '" + whole + "'");
  }
  return value;
}

std::vector<i64> distinct_prime_factors(i64 n) {
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

std::set<std::pair<int, u64>> norm_image(const Tower& tower, int level,
                                         const PadicNumber& uniformizer) {
  const ResidueRing ring(tower, ResidueRing::Field::extension, tower.e() * level);
  std::set<std::pair<int, u64>> out;
  const ExtElement pi = tower.pi_K();
  for (u64 key = 0; key < ring.size(); ++key) {
    if (!ring.is_unit(key)) continue;
    ExtElement x = ring.ext_element(key);
    for (int j = 0; j < 2; ++j) {
      const PadicNumber n = x.norm();
      const int v = n.valuation();
      const PadicNumber unit = n * uniformizer.pow(-v);
      out.emplace(((v % 2) + 2) % 2, unit.residue(level));
      x = x * pi;
    }
  }
  return out;
}

}  // namespace

std::string to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::unramified:
      return "unramified";
    case ExtensionKind::tame:
      return "tame";
    case ExtensionKind::wild:
      return "wild";
  }
  return "unknown";
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string::npos) {
    r.num = parse_i64(text, text);
  } else {
    r.num = parse_i64(std::string_view(text).substr(0, slash), text);
    r.den = parse_i64(std::string_view(text).substr(slash + 1), text);
  }
  if (r.den == 0) throw InputError("rational '" + text + "' has zero denominator");
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  const i64 g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

int default_precision(i64 p) { return std::min(40, max_precision(p) - 2); }

// ---------------------------------------------------------------------------
// ExtElement

ExtElement::ExtElement(std::shared_ptr<const TowerCore> core, PadicNumber x0, PadicNumber x1)
    : core_(std::move(core)), x0_(std::move(x0)), x1_(std::move(x1)) {}

void ExtElement::check_same_tower(const ExtElement& other) const {
  if (core_ != other.core_) throw InputError("elements of different towers");
}

ExtElement ExtElement::operator+(const ExtElement& other) const {
  check_same_tower(other);
  return ExtElement(core_, x0_ + other.x0_, x1_ + other.x1_);
}

ExtElement ExtElement::operator-(const ExtElement& other) const {
  check_same_tower(other);
  return ExtElement(core_, x0_ - other.x0_, x1_ - other.x1_);
}

ExtElement ExtElement::operator-() const { return ExtElement(core_, -x0_, -x1_); }

ExtElement ExtElement::operator*(const ExtElement& other) const {
  check_same_tower(other);
  const PadicNumber prod11 = x1_ * other.x1_;
  return ExtElement(core_, x0_ * other.x0_ - core_->a0 * prod11,
                    x0_ * other.x1_ + x1_ * other.x0_ - core_->a1 * prod11);
}

ExtElement ExtElement::sigma() const { return ExtElement(core_, x0_ - core_->a1 * x1_, -x1_); }

PadicNumber ExtElement::norm() const {
  return x0_ * x0_ - core_->a1 * x0_ * x1_ + core_->a0 * x1_ * x1_;
}

PadicNumber ExtElement::trace() const { return x0_ + x0_ - core_->a1 * x1_; }

ExtElement ExtElement::inverse() const {
  const PadicNumber n = norm();
  if (n.is_zero()) throw PrecisionError("inverse of an element that is zero to precision");
  return sigma().scaled(n.inverse());
}

ExtElement ExtElement::scaled(const PadicNumber& a) const {
  return ExtElement(core_, x0_ * a, x1_ * a);
}

ExtElement ExtElement::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  const i64 p = core_->p;
  ExtElement result(core_, PadicNumber::from_integer(1, p, core_->precision),
                    PadicNumber::zero(p, core_->precision));
  ExtElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

namespace {
std::string coordinate_string(const PadicNumber& x) {
  if (x.is_zero()) return "0";
  const u64 m = prime_power(x.prime(), x.precision());
  const std::string unit = x.unit() > m / 2 ? "-" + std::to_string(m - x.unit())
                                            : std::to_string(x.unit());
  if (x.valuation() == 0) return unit;
  return unit + "*" + std::to_string(x.prime()) + "^" + std::to_string(x.valuation());
}
}  // namespace

std::string ExtElement::str() const {
  return coordinate_string(x0_) + " + (" + coordinate_string(x1_) + ")*theta";
}

// ---------------------------------------------------------------------------
// Tower

Tower Tower::make(i64 p, Rational a1, Rational a0, int precision) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (precision == 0) precision = default_precision(p);
  if (precision < 4 || precision > max_precision(p)) {
    throw InputError("precision " + std::to_string(precision) + " outside [4, " +
                     std::to_string(max_precision(p)) + "] for p = " + std::to_string(p));
  }
  for (const Rational& r : {a1, a0}) {
    if (r.den % p == 0) throw InputError("coefficient " + r.str() + " is not p-integral");
  }
  auto core = std::make_shared<TowerCore>();
  core->p = p;
  core->precision = precision;
  core->a1_q = a1;
  core->a0_q = a0;
  core->a1 = PadicNumber::from_rational(a1.num, a1.den, p, precision);
  core->a0 = PadicNumber::from_rational(a0.num, a0.den, p, precision);
  const int v0 = core->a0.valuation();
  const int v1 = core->a1.valuation();
  Tower tower;
  if (v0 == 1 && v1 >= 1) {
    core->ramified = true;
    tower.kind_ = p == 2 ? ExtensionKind::wild : ExtensionKind::tame;
  } else if (v0 == 0) {
    const i64 b = static_cast<i64>(core->a1.residue(1));
    const i64 c = static_cast<i64>(core->a0.residue(1));
    for (i64 x = 0; x < p; ++x) {
      if (static_cast<i64>((static_cast<u128>(x) * x + static_cast<u128>(b) * x + c) %
                           static_cast<u128>(p)) == 0) {
        throw InputError("x^2 + (" + a1.str() + ")x + (" + a0.str() + ") is reducible mod " +
                         std::to_string(p));
      }
    }
    core->ramified = false;
    tower.kind_ = ExtensionKind::unramified;
  } else {
    throw InputError("x^2 + (" + a1.str() + ")x + (" + a0.str() +
                     ") is neither Eisenstein nor a unit polynomial irreducible mod p");
  }
  tower.core_ = std::move(core);
  tower.different_ = tower.valuation_K(tower.trace_zero_generator());
  tower.break_ = tower.ramification_break_by_enumeration();
  if (!tower.ramified() && tower.different_ != 0) {
    throw InvariantError("unramified construction with nonzero different exponent");
  }
  if (tower.break_ != tower.different_ - 1) {
    throw InvariantError("ramification break " + std::to_string(tower.break_) +
                         " disagrees with different exponent " +
                         std::to_string(tower.different_));
  }
  return tower;
}

Tower Tower::with_precision(int precision) const {
  return make(prime(), a1(), a0(), precision);
}

bool Tower::operator==(const Tower& other) const {
  return prime() == other.prime() && a1() == other.a1() && a0() == other.a0() &&
         precision() == other.precision();
}

PadicNumber Tower::base(i64 num, i64 den) const {
  return PadicNumber::from_rational(num, den, prime(), precision());
}

ExtElement Tower::element(PadicNumber x0, PadicNumber x1) const {
  if (x0.prime() != prime() || x1.prime() != prime()) {
    throw InputError("coordinates over the wrong prime");
  }
  return ExtElement(core_, std::move(x0), std::move(x1));
}

ExtElement Tower::from_base(const PadicNumber& x) const {
  return element(x, PadicNumber::zero(prime(), precision()));
}

ExtElement Tower::from_rationals(i64 n0, i64 d0, i64 n1, i64 d1) const {
  return element(base(n0, d0), base(n1, d1));
}

ExtElement Tower::pi_K() const { return ramified() ? theta() : from_rationals(prime(), 1); }

ExtElement Tower::pi_K_power(int k) const { return pi_K().pow(k); }

PadicNumber Tower::pi_F() const { return ramified() ? core_->a0 : base(prime()); }

ExtElement Tower::trace_zero_generator() const {
  return element(core_->a1, base(2));
}

int Tower::valuation_K(const ExtElement& x) const {
  if (x.core_ptr() != core_) throw InputError("element of a different tower");
  const int inf = PadicNumber::kInfiniteValuation;
  // Each coordinate contributes either an exact valuation or a lower bound.
  const int scale = e();
  const int shift1 = ramified() ? 1 : 0;
  auto contribution = [&](const PadicNumber& c, int shift) -> std::pair<int, bool> {
    if (c.is_zero()) return {scale * c.absolute_precision() + shift, false};
    return {scale * c.valuation() + shift, true};
  };
  const auto [c0, exact0] = contribution(x.x0(), 0);
  const auto [c1, exact1] = contribution(x.x1(), shift1);
  int best = inf;
  int bound = inf;
  (exact0 ? best : bound) = c0;
  if (exact1) {
    best = std::min(best, c1);
  } else {
    bound = std::min(bound, c1);
  }
  if (best == inf) return inf;
  if (best >= bound) {
    throw PrecisionError("valuation undetermined at the current precision");
  }
  return best;
}

std::vector<ExtElement> Tower::residue_representatives() const {
  std::vector<ExtElement> out;
  const i64 p = prime();
  if (ramified()) {
    for (i64 i = 0; i < p; ++i) out.push_back(from_rationals(i, 1));
  } else {
    for (i64 j = 0; j < p; ++j) {
      for (i64 i = 0; i < p; ++i) out.push_back(from_rationals(i, 1, j, 1));
    }
  }
  return out;
}

int Tower::ramification_break_by_enumeration() const {
  const i64 p = prime();
  const i64 bound = p * p;
  int best = PadicNumber::kInfiniteValuation;
  for (i64 x1 = 1; x1 < bound; ++x1) {
    for (i64 x0 = 0; x0 < bound; ++x0) {
      const ExtElement alpha = from_rationals(x0, 1, x1, 1);
      best = std::min(best, valuation_K(alpha.sigma() - alpha));
    }
  }
  return best - 1;
}

// ---------------------------------------------------------------------------
// ResidueRing

ResidueRing::ResidueRing(Tower tower, Field field, int level)
    : tower_(std::move(tower)), field_(field), level_(level) {
  if (level < 1) throw InputError("residue ring level must be >= 1");
  const i64 p = tower_.prime();
  if (field_ == Field::base) {
    hmax_ = level;
    mod0_ = prime_power(p, level);
    mod1_ = 1;
  } else if (tower_.ramified()) {
    hmax_ = ceil_div(level, 2);
    mod0_ = prime_power(p, hmax_);
    mod1_ = prime_power(p, level / 2);
  } else {
    hmax_ = level;
    mod0_ = prime_power(p, level);
    mod1_ = mod0_;
  }
  modh_ = prime_power(p, hmax_);
  if (tower_.precision() < hmax_) {
    throw PrecisionError("tower precision " + std::to_string(tower_.precision()) +
                         " below residue ring depth " + std::to_string(hmax_));
  }
  a1_ = tower_.core()->a1.residue(hmax_);
  a0_ = tower_.core()->a0.residue(hmax_);
}

i64 ResidueRing::residue_size() const {
  return field_ == Field::extension ? tower_.q_K() : tower_.q_F();
}

u64 ResidueRing::add(u64 a, u64 b) const {
  return encode((a % mod0_ + b % mod0_) % mod0_, (a / mod0_ + b / mod0_) % mod1_);
}

u64 ResidueRing::sub(u64 a, u64 b) const {
  return encode((a % mod0_ + mod0_ - b % mod0_) % mod0_,
                (a / mod0_ + mod1_ - b / mod0_) % mod1_);
}

u64 ResidueRing::mul(u64 a, u64 b) const {
  const u64 x0 = a % mod0_, x1 = a / mod0_;
  const u64 y0 = b % mod0_, y1 = b / mod0_;
  if (field_ == Field::base) return mulmod(x0, y0, mod0_);
  const u64 m = modh_;
  const u64 p11 = mulmod(x1, y1, m);
  const u64 r0 = (mulmod(x0, y0, m) + m - mulmod(a0_, p11, m)) % m;
  const u64 r1 = (mulmod(x0, y1, m) + mulmod(x1, y0, m) + m - mulmod(a1_, p11, m)) % m;
  return encode(r0, r1);
}

u64 ResidueRing::power(u64 a, u64 e) const {
  u64 result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

int ResidueRing::valuation(u64 key) const {
  const i64 p = tower_.prime();
  const u64 c0 = key % mod0_, c1 = key / mod0_;
  int v = level_;
  if (field_ == Field::base) {
    if (c0 != 0) v = u64_valuation(c0, p);
  } else if (tower_.ramified()) {
    if (c0 != 0) v = std::min(v, 2 * u64_valuation(c0, p));
    if (c1 != 0) v = std::min(v, 2 * u64_valuation(c1, p) + 1);
  } else {
    if (c0 != 0) v = std::min(v, u64_valuation(c0, p));
    if (c1 != 0) v = std::min(v, u64_valuation(c1, p));
  }
  return std::min(v, level_);
}

u64 ResidueRing::key_of(const ExtElement& x) const {
  if (field_ != Field::extension) throw InputError("extension element in a base-field ring");
  if (x.core_ptr() != tower_.core()) throw InputError("element of a different tower");
  if (x.x0().valuation() < 0 || x.x1().valuation() < 0) {
    throw InputError("residue of a non-integral element");
  }
  const int h1 = tower_.ramified() ? level_ / 2 : level_;
  return encode(x.x0().residue(hmax_), x.x1().residue(h1));
}

u64 ResidueRing::key_of(const PadicNumber& x) const {
  if (x.valuation() < 0) throw InputError("residue of a non-integral element");
  if (field_ == Field::extension) return key_of(tower_.from_base(x));
  return encode(x.residue(hmax_), 0);
}

ExtElement ResidueRing::ext_element(u64 key) const {
  if (field_ != Field::extension) throw InputError("base-field ring has no extension elements");
  return tower_.from_rationals(static_cast<i64>(key % mod0_), 1, static_cast<i64>(key / mod0_), 1);
}

PadicNumber ResidueRing::base_element(u64 key) const {
  if (field_ != Field::base) throw InputError("extension ring key is not a base element");
  return tower_.base(static_cast<i64>(key % mod0_));
}

u64 ResidueRing::uniformizer_basis(int j, int i) const {
  if (i < 0 || i >= residue_degree()) throw InputError("residue basis index out of range");
  const i64 p = tower_.prime();
  if (field_ == Field::base) return power(encode(static_cast<u64>(p), 0), static_cast<u64>(j));
  if (tower_.ramified()) return power(encode(0, 1), static_cast<u64>(j));
  const u64 eps = i == 0 ? one() : encode(0, 1);
  return mul(power(encode(static_cast<u64>(p), 0), static_cast<u64>(j)), eps);
}

u64 ResidueRing::residue_generator() const {
  const ResidueRing field1(tower_, field_, 1);
  const i64 q = residue_size();
  const i64 p = tower_.prime();
  const auto factors = distinct_prime_factors(q - 1);
  const u64 span1 = (field_ == Field::extension && !tower_.ramified()) ? static_cast<u64>(p) : 1;
  for (u64 c1 = 0; c1 < span1; ++c1) {
    for (u64 c0 = 0; c0 < static_cast<u64>(p); ++c0) {
      const u64 k1 = field1.encode(c0, c1);
      if (!field1.is_unit(k1)) continue;
      bool generator = true;
      for (i64 r : factors) {
        if (field1.power(k1, static_cast<u64>((q - 1) / r)) == field1.one()) {
          generator = false;
          break;
        }
      }
      if (generator) return encode(c0, c1);
    }
  }
  throw InvariantError("residue field has no generator");
}

// ---------------------------------------------------------------------------
// Norm group and catalog

bool NormGroup::contains(int parity, u64 unit_residue) const {
  return members.count({((parity % 2) + 2) % 2, unit_residue}) > 0;
}

std::pair<int, PadicNumber> split_uniformizer(const PadicNumber& x, const Tower& tower) {
  if (x.is_zero()) throw InputError("zero has no uniformizer decomposition");
  const int v = x.valuation();
  return {v, x * tower.pi_F().pow(-v)};
}

bool NormGroup::contains(const PadicNumber& x, const Tower& tower) const {
  const auto [v, u] = split_uniformizer(x, tower);
  return contains(v, u.residue(level));
}

NormGroup norm_group(const Tower& tower, int level) {
  if (level < 1) throw InputError("norm group level must be >= 1");
  NormGroup group;
  group.level = level;
  group.members = norm_image(tower, level, tower.pi_F());
  const i64 p = tower.prime();
  group.ambient_order = 2 * static_cast<u64>(p - 1) * prime_power(p, level - 1);
  if (group.ambient_order != 2 * group.members.size()) {
    throw InvariantError("norm group at level " + std::to_string(level) + " has index " +
                         std::to_string(group.ambient_order / group.members.size()) +
                         ", expected 2");
  }
  return group;
}

std::vector<CatalogEntry> field_catalog(i64 p, int precision) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  std::vector<CatalogEntry> out;
  auto add = [&](std::string name, i64 a1, i64 a0) {
    out.push_back({std::move(name), Tower::make(p, Rational{a1, 1}, Rational{a0, 1}, precision)});
  };
  int fingerprint_level = 2;
  if (p == 2) {
    add("Q2(sqrt5)", 1, 1);
    add("Q2(sqrt-1)", -2, 2);
    add("Q2(sqrt3)", -2, -2);
    add("Q2(sqrt2)", 0, -2);
    add("Q2(sqrt-2)", 0, 2);
    add("Q2(sqrt6)", 0, -6);
    add("Q2(sqrt-6)", 0, 6);
    fingerprint_level = 4;
  } else {
    i64 eps = 2;
    while (legendre(eps, p) != -1) ++eps;
    const std::string ps = std::to_string(p);
    add("Q" + ps + "(sqrt" + std::to_string(eps) + ")", 0, -eps);
    add("Q" + ps + "(sqrt" + ps + ")", 0, -p);
    add("Q" + ps + "(sqrt" + std::to_string(eps * p) + ")", 0, -eps * p);
  }
  std::set<std::pair<int, std::set<std::pair<int, u64>>>> seen;
  for (const auto& entry : out) {
    const Tower fp = entry.tower.with_precision(std::max(entry.tower.precision(), 8));
    auto image = norm_image(fp, fingerprint_level, fp.base(p));
    if (!seen.emplace(entry.tower.ramification_break(), std::move(image)).second) {
      throw InvariantError("catalog entries " + entry.name + " duplicate an isomorphism class");
    }
  }
  return out;
}

}  // namespace epsilocal
