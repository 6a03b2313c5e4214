#include "doctest.h"

#include <random>

#include "oracles.hpp"

using namespace epsilocal;

namespace {
Tower q2_sqrt2() { return Tower::make(2, {0, 1}, {-2, 1}); }
Tower q2_i() { return Tower::make(2, {-2, 1}, {2, 1}); }

ExtElement random_unit(const Tower& T, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> d(-50, 50);
  while (true) {
    const ExtElement x = T.from_rationals(d(rng), 1, d(rng), 1);
    if (!x.is_zero() && T.valuation_K(x) == 0) return x;
  }
}
}  // namespace

TEST_CASE("characters are homomorphisms") {
  std::mt19937_64 rng(7);
  for (i64 p : {2, 3}) {
    for (const auto& entry : field_catalog(p)) {
      const Tower& T = entry.tower;
      auto Q = unit_quotient(T, ResidueRing::Field::extension, p == 2 ? 6 : 3);
      for (int i = 0; i < 5; ++i) {
        const MultChar chi = random_character(Q, rng, 8);
        CHECK(chi.conductor() <= chi.level());
        for (int j = 0; j < 5; ++j) {
          const ExtElement x = random_unit(T, rng) * T.pi_K_power(j - 2);
          const ExtElement y = random_unit(T, rng);
          CHECK(chi.eval(x * y) == chi.eval(x) + chi.eval(y));
          CHECK(chi.eval(x * x) == chi.eval(x).times(2));
          CHECK(chi.inverse().eval(x) == -chi.eval(x));
        }
      }
      CHECK(MultChar::trivial(Q).eval(random_unit(T, rng)).is_zero());
      CHECK(MultChar::trivial(Q).conductor() == 0);
    }
  }
}

TEST_CASE("conductor is minimal by scan") {
  std::mt19937_64 rng(11);
  const Tower T = q2_sqrt2();
  auto Q = unit_quotient(T, ResidueRing::Field::extension, 7);
  for (int i = 0; i < 30; ++i) {
    const MultChar chi = random_character(Q, rng, 4);
    const int a = chi.conductor();
    // chi is trivial on U^a and not on U^(a-1)
    bool trivial_at_a = true, trivial_below = true;
    for (u64 k : Q->elements()) {
      if (chi.eval_unit_key(k).is_zero()) continue;
      if (Q->ring().in_unit_level(k, a)) trivial_at_a = false;
      if (a >= 1 && Q->ring().in_unit_level(k, a - 1)) trivial_below = false;
    }
    CHECK(trivial_at_a);
    if (a >= 1) CHECK(!trivial_below);
  }
}

TEST_CASE("a character nontrivial exactly on U^3 has conductor 4") {
  const Tower T = q2_sqrt2();
  auto Q = unit_quotient(T, ResidueRing::Field::extension, 6);
  std::mt19937_64 rng(3);
  bool found = false;
  for (int i = 0; i < 400 && !found; ++i) {
    const MultChar chi = random_character(Q, rng, 1);
    const ExtElement g3 = T.one() + T.pi_K_power(3);
    bool trivial_on_u4 = true;
    for (u64 k : Q->elements()) {
      if (Q->ring().in_unit_level(k, 4) && !chi.eval_unit_key(k).is_zero()) trivial_on_u4 = false;
    }
    if (trivial_on_u4 && !chi.eval(g3).is_zero()) {
      CHECK(chi.conductor() == 4);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("omega") {
  const Tower a = q2_sqrt2();
  const MultChar w = omega_character(a);
  CHECK(w.conductor() == 3);
  CHECK(w.eval(a.base(-2)).is_zero());
  CHECK(omega_character(q2_i()).conductor() == 2);
  CHECK(omega_character(Tower::make(5, {0, 1}, {-5, 1})).conductor() == 1);
  for (const auto& entry : field_catalog(2)) {
    const Tower& T = entry.tower;
    const MultChar om = omega_character(T);
    const int L = std::max(om.level(), 4);
    const oracle::NormOracle norms(T, L);
    const ResidueRing rf(T, ResidueRing::Field::base, L);
    for (u64 u = 0; u < rf.size(); ++u) {
      if (rf.is_unit(u)) CHECK(om.eval(rf.base_element(u)) == norms.omega_unit(u));
    }
    CHECK(om.eval(T.pi_F()) == norms.omega_pi_F());
  }
}

TEST_CASE("symplectic enumeration matches the definitional oracle") {
  for (const auto& entry : field_catalog(2)) {
    const Tower& T = entry.tower;
    const int M = T.ramified() ? 8 : 4;
    auto Q = unit_quotient(T, ResidueRing::Field::extension, M);
    std::set<std::string> got;
    for (const auto& chi : enumerate_symplectic(T, M)) got.insert(oracle::signature(chi.lifted(Q), *Q));
    CHECK_MESSAGE(got == oracle::brute_symplectic(T, M), entry.name);
  }
  for (i64 p : {3, 5}) {
    for (const auto& entry : field_catalog(p)) {
      const Tower& T = entry.tower;
      const int M = T.ramified() ? 3 : 2;
      auto Q = unit_quotient(T, ResidueRing::Field::extension, M);
      std::set<std::string> got;
      for (const auto& chi : enumerate_symplectic(T, M)) got.insert(oracle::signature(chi.lifted(Q), *Q));
      CHECK_MESSAGE(got == oracle::brute_symplectic(T, M), entry.name);
    }
  }
}

TEST_CASE("symplectic conductors and values") {
  const Tower a = q2_sqrt2();
  std::set<int> conductors;
  for (const auto& chi : enumerate_symplectic(a, 8)) {
    conductors.insert(chi.conductor());
    CHECK(restrict_to_F(chi) == restrict_to_F(enumerate_symplectic(a, 8).front()).lifted(
                                    restrict_to_F(chi).quotient_ptr()));
    const Angle m1 = chi.eval(a.base(-1));
    CHECK((m1.is_zero() || m1 == Angle(1, 2)));
  }
  CHECK(conductors == std::set<int>{5, 6, 8});

  std::set<int> ci;
  for (const auto& chi : enumerate_symplectic(q2_i(), 8)) ci.insert(chi.conductor());
  CHECK(ci == std::set<int>{3, 4, 6, 8});
}

TEST_CASE("restriction and twisting") {
  const Tower T = q2_sqrt2();
  auto Q = unit_quotient(T, ResidueRing::Field::extension, 6);
  CHECK(restrict_to_F(MultChar::trivial(Q)).is_trivial());
  const auto chars = enumerate_symplectic(T, 8);
  const MultChar chi_odd = chars.front();
  CHECK(chi_odd.conductor() == 5);
  for (const auto& chi : chars) {
    const MultChar eta = chi * chi_odd.inverse();
    CHECK(restrict_to_F(eta).is_trivial());
    if (chi.conductor() % 2 == 0) CHECK(eta.conductor() == chi.conductor());
    CHECK((eta * chi_odd) == chi);
  }
  auto Q8 = unit_quotient(T, ResidueRing::Field::extension, 8);
  CHECK((chi_odd * MultChar::trivial(Q8)) == chi_odd.lifted(Q8));
}

TEST_CASE("additive characters") {
  const Tower a = q2_sqrt2();
  const AddChar psi = AddChar::make(a, a.pi_K_power(-3), 0);
  CHECK(psi.conductor() == 0);
  CHECK(psi.trivial_on_F());
  CHECK(psi.conductor_by_scan() == 0);

  const AddChar psi3 = AddChar::make(a, a.pi_K_power(-3).scaled(a.base(3, 2)), 0);
  CHECK(psi3.conductor() == -2);
  CHECK(psi3.conductor_by_scan() == -2);

  const Tower u = field_catalog(2)[0].tower;
  const AddChar pu = AddChar::make(u, u.trace_zero_generator().scaled(u.base(4)), 0);
  CHECK(pu.trivial_on_F());
  CHECK(pu.conductor() == 2);

  std::mt19937_64 rng(5);
  for (const auto& entry : field_catalog(2)) {
    const Tower& T = entry.tower;
    for (int n = -3; n <= 3; ++n) {
      const AddChar p1 = uniformizer_psi(T, n);
      CHECK(p1.conductor() == n);
      CHECK(p1.conductor_by_scan() == n);
      if (auto p2 = trace_zero_psi(T, n)) {
        CHECK(p2->conductor() == n);
        CHECK(p2->trivial_on_F());
        CHECK(p2->conductor_by_scan() == n);
        CHECK(p2->eval(T.base(5, 8)).is_zero());
        CHECK(p2->eval(T.base(3, 64)).is_zero());
      }
      for (int i = 0; i < 4; ++i) {
        const ExtElement x = random_unit(T, rng).scaled(T.base(1, 8));
        const ExtElement y = random_unit(T, rng).scaled(T.base(1, 4));
        CHECK(p1.eval(x + y) == p1.eval(x) + p1.eval(y));
        CHECK(p1.eval(x) == oracle::psi_direct(p1, x));
      }
    }
  }
}

TEST_CASE("trace-zero twists always give even conductor when ramified") {
  for (const auto& entry : field_catalog(2)) {
    const Tower& T = entry.tower;
    if (!T.ramified()) continue;
    for (int n = -5; n <= 5; ++n) CHECK(trace_zero_psi(T, n).has_value() == (n % 2 == 0));
    for (int j = -3; j <= 3; ++j) {
      const AddChar psi = AddChar::make(T, T.trace_zero_generator().scaled(T.base(3).pow(j)), 0);
      CHECK(psi.conductor() % 2 == 0);
    }
  }
}
