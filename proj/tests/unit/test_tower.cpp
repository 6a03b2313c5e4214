#include "doctest.h"

#include "epsilocal/error.hpp"
#include "epsilocal/tower.hpp"

using namespace epsilocal;

namespace {
Tower q2_sqrt2() { return Tower::make(2, {0, 1}, {-2, 1}); }
Tower q2_i() { return Tower::make(2, {-2, 1}, {2, 1}); }
}  // namespace

TEST_CASE("make_tower examples") {
  const Tower a = q2_sqrt2();
  CHECK(a.ramified());
  CHECK(a.e() == 2);
  CHECK(a.f() == 1);
  CHECK(a.pi_F().congruent(a.base(-2)));
  CHECK(a.different_exponent() == 3);
  CHECK(a.ramification_break() == 2);
  CHECK(a.ramification_break_by_enumeration() == 2);
  CHECK(a.trace_zero_uniformizer());

  const Tower b = q2_i();
  CHECK(b.ramified());
  CHECK(b.pi_F().congruent(b.base(2)));
  CHECK(b.different_exponent() == 2);
  CHECK(b.ramification_break() == 1);
  CHECK(b.ramification_break_by_enumeration() == 1);
  CHECK(!b.trace_zero_uniformizer());

  const Tower c = Tower::make(3, {0, 1}, {-3, 1});
  CHECK(c.kind() == ExtensionKind::tame);
  CHECK(c.ramification_break() == 0);
  CHECK(c.different_exponent() == 1);

  const Tower u = field_catalog(2)[0].tower;
  CHECK(!u.ramified());
  CHECK(u.different_exponent() == 0);
  CHECK(u.ramification_break() == -1);
  CHECK(u.q_K() == 4);
}

TEST_CASE("bad polynomials are input errors") {
  CHECK_THROWS_AS(Tower::make(2, {0, 1}, {-1, 1}), InputError);  // x^2 - 1 splits
  CHECK_THROWS_AS(Tower::make(4, {0, 1}, {-2, 1}), InputError);
  CHECK_THROWS_AS(Tower::make(3, {0, 1}, {-9, 1}), InputError);
}

TEST_CASE("norm and trace") {
  const Tower a = q2_sqrt2();
  CHECK(a.theta().trace().is_zero());
  CHECK(a.theta().norm().congruent(a.base(-2)));
  const Tower b = q2_i();
  CHECK(b.theta().norm().congruent(b.base(2)));
  const ExtElement x = a.from_rationals(3, 5, 1, 7);
  CHECK((x * x.sigma()).x1().is_zero());
  CHECK((x * x.sigma()).x0().congruent(x.norm()));
  CHECK((x + x.sigma()).x0().congruent(x.trace()));
  CHECK((x * x.inverse() - a.one()).is_zero());
}

TEST_CASE("valuations") {
  const Tower a = q2_sqrt2();
  CHECK(a.valuation_K(a.pi_K()) == 1);
  CHECK(a.valuation_K(a.from_rationals(2, 1)) == 2);
  CHECK(a.valuation_K(a.pi_K_power(3) + a.from_rationals(2, 1)) == 2);
  CHECK(a.valuation_K(a.pi_K_power(-3)) == -3);
  for (int i = -4; i < 6; ++i) CHECK(a.valuation_K(a.pi_K_power(i) * a.from_rationals(3, 1, 0, 1)) == i);
  const Tower u = field_catalog(2)[0].tower;
  CHECK(u.valuation_K(u.from_rationals(4, 1, 2, 1)) == 1);
}

TEST_CASE("d = t + 1 on every ramified tower") {
  for (i64 p : {2, 3, 5, 7}) {
    for (const auto& entry : field_catalog(p)) {
      const Tower& T = entry.tower;
      if (!T.ramified()) continue;
      CHECK(T.different_exponent() == T.ramification_break() + 1);
      CHECK(T.ramification_break_by_enumeration() == T.ramification_break());
      CHECK(T.valuation_K(T.trace_zero_generator()) == T.different_exponent());
    }
  }
}

TEST_CASE("catalog sizes") {
  CHECK(field_catalog(2).size() == 7);
  CHECK(field_catalog(3).size() == 3);
  CHECK(field_catalog(13).size() == 3);
  int wild = 0;
  for (const auto& entry : field_catalog(2)) wild += entry.tower.kind() == ExtensionKind::wild;
  CHECK(wild == 6);
}

TEST_CASE("residue rings") {
  const Tower a = q2_sqrt2();
  const ResidueRing r(a, ResidueRing::Field::extension, 5);
  CHECK(r.size() == 32);
  for (u64 x = 0; x < r.size(); ++x) {
    CHECK(r.key_of(r.ext_element(x)) == x);
    for (u64 y = 0; y < r.size(); y += 3) {
      CHECK(r.mul(x, y) == r.key_of(r.ext_element(x) * r.ext_element(y)));
      CHECK(r.add(x, y) == r.key_of(r.ext_element(x) + r.ext_element(y)));
    }
  }
  CHECK(r.valuation(r.key_of(a.pi_K_power(3))) == 3);
  CHECK(r.in_unit_level(r.key_of(a.one() + a.pi_K_power(4)), 4));
  CHECK(!r.in_unit_level(r.key_of(a.one() + a.pi_K_power(4)), 5));
}

TEST_CASE("norm groups") {
  const Tower a = q2_sqrt2();
  const NormGroup g = norm_group(a, 3);
  CHECK(g.index() == 2);
  CHECK(g.contains(a.base(-2), a));
  for (i64 x : {1, 3, 5, 7, 2, 6, 10, 14}) CHECK(g.contains(a.base(x * x), a));

  const Tower b = q2_i();
  const NormGroup h = norm_group(b, 3);
  CHECK(h.contains(b.base(2), b));
  CHECK(!h.contains(b.base(-1), b));
}
