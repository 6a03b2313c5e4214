#include "doctest.h"

#include <random>

#include "epsilocal/characters.hpp"

using namespace epsilocal;

TEST_CASE("Smith normal form") {
  IntMatrix A{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const SmithForm s = smith_normal_form(A);
  CHECK(s.diagonal == std::vector<i64>{2, 6, 12});
  const IntMatrix D = multiply(multiply(s.U, A), s.V);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(D[i][j] == (i == j ? s.diagonal[i] : 0));
  }
  const IntMatrix I = multiply(s.V, s.V_inverse);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(I[i][j] == (i == j ? 1 : 0));
  }
}

TEST_CASE("unit quotient orders") {
  const Tower q2s2 = Tower::make(2, {0, 1}, {-2, 1});
  CHECK(unit_quotient(q2s2, ResidueRing::Field::extension, 1)->order() == 1);
  CHECK(unit_quotient(q2s2, ResidueRing::Field::extension, 4)->order() == 8);
  auto base3 = unit_quotient(q2s2, ResidueRing::Field::base, 3);
  CHECK(base3->order() == 4);
  CHECK(base3->orders() == std::vector<i64>{2, 2});

  for (const auto& entry : field_catalog(3)) {
    const i64 q = entry.tower.q_K();
    for (int m = 1; m <= 3; ++m) {
      u64 expected = q - 1;
      for (int i = 1; i < m; ++i) expected *= q;
      CHECK(unit_quotient(entry.tower, ResidueRing::Field::extension, m)->order() == expected);
    }
  }
}

TEST_CASE("discrete logs reproduce every element") {
  for (i64 p : {2, 3}) {
    for (const auto& entry : field_catalog(p)) {
      auto Q = unit_quotient(entry.tower, ResidueRing::Field::extension, p == 2 ? 5 : 3);
      const ResidueRing& R = Q->ring();
      i64 product = 1;
      for (i64 d : Q->orders()) product *= d;
      CHECK(static_cast<u64>(product) == Q->order());
      for (u64 key : Q->elements()) {
        const auto& coords = Q->dlog(key);
        u64 x = R.one();
        for (std::size_t i = 0; i < coords.size(); ++i) {
          x = R.mul(x, R.power(Q->generators()[i], static_cast<u64>(coords[i])));
        }
        CHECK(x == key);
      }
      for (std::size_t i = 0; i < Q->generators().size(); ++i) {
        CHECK(R.power(Q->generators()[i], static_cast<u64>(Q->orders()[i])) == R.one());
      }
    }
  }
}

TEST_CASE("filtration generators lie in the right layer") {
  const Tower T = field_catalog(2)[3].tower;
  auto Q = unit_quotient(T, ResidueRing::Field::extension, 6);
  for (int j = 1; j < 6; ++j) {
    for (u64 g : Q->filtration_generators(j)) {
      CHECK(Q->ring().in_unit_level(g, j));
      CHECK(!Q->ring().in_unit_level(g, j + 1));
    }
  }
}
