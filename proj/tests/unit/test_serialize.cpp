#include "doctest.h"

#include "epsilocal/error.hpp"
#include "epsilocal/harness.hpp"
#include "epsilocal/serialize.hpp"

using namespace epsilocal;

TEST_CASE("tower round trip") {
  for (const auto& e : field_catalog(2)) {
    const Json j = tower_to_json(e.tower);
    CHECK(j["p"] == 2);
    CHECK(j["poly"].size() == 2);
    CHECK(tower_from_json(j) == e.tower);
  }
  const Json half = Json::parse(R"({"p": 2, "poly": ["0/1", -2]})");
  CHECK(tower_from_json(half).different_exponent() == 3);
  CHECK_THROWS_AS(tower_from_json(Json::parse(R"({"p": 4, "poly": [0, -2]})")), InputError);
  CHECK_THROWS_AS(tower_from_json(Json::parse(R"({"p": 2, "poly": [0]})")), InputError);
  CHECK_THROWS_AS(tower_from_json(Json::parse(R"({"poly": [0, -2]})")), InputError);
  CHECK_THROWS_AS(tower_from_json(Json::parse(R"({"p": 2, "poly": [0, 1.5]})")), InputError);
}

TEST_CASE("character round trip") {
  const Tower T = field_catalog(2)[3].tower;
  for (const auto& chi : enumerate_symplectic(T, 6)) {
    const Json j = char_to_json(chi);
    CHECK(j["level"] == 6);
    CHECK(char_from_json(j, T) == chi);
  }
  CHECK_THROWS_AS(char_from_json(Json::parse(R"({"level": 6, "pi_value": "0/1"})"), T), InputError);
  CHECK_THROWS_AS(char_from_json(Json::parse(R"({"level": 6, "pi_value": "0/1", "unit_exponents": [1]})"), T),
                  InputError);
  CHECK_THROWS_AS(char_from_json(Json::parse(R"({"level": 0, "pi_value": "0/1", "unit_exponents": []})"), T),
                  InputError);
  CHECK_THROWS_AS(char_from_json(Json::parse(R"({"level": 3, "pi_value": "x", "unit_exponents": [0]})"), T),
                  InputError);
}

TEST_CASE("cyclotomic numbers") {
  const Json one = cyc_to_json(CycNumber::from_rational(1, 1, 8));
  CHECK(one.dump() == R"({"n":8,"coeffs":["1","0","0","0"],"approx":[1.0,0.0]})");
  const Json m = cyc_to_json(CycNumber::from_rational(-1, 1, 8));
  CHECK(m["approx"][1].get<double>() == 0.0);
  CHECK(!std::signbit(m["approx"][1].get<double>()));
}

TEST_CASE("epsilon serialization") {
  const Tower T = field_catalog(2)[3].tower;
  const auto chi = enumerate_symplectic(T, 6).back();
  const AddChar psi = *trace_zero_psi(T, 0);
  const Json j = epsilon_to_json(chi, psi, epsilon_naive(chi, psi));
  for (const char* k : {"char", "psi", "formula", "gauge_c", "value", "class"}) CHECK(j.contains(k));
  CHECK(j["psi"]["trivial_on_F"] == true);
  CHECK(j["formula"] == "naive");
}

TEST_CASE("reports") {
  VerifyReport r;
  r.theorem = "demo";
  r.tower = "Q2(sqrt2)";
  r.record(true, {});
  r.record(false, {"check", "chi", "psi", "+1", "-1"});
  r.runtime_ms = 12.5;
  CHECK(r.instances == 2);
  CHECK(r.passes == 1);
  CHECK(!report_to_json(r, false).contains("runtime_ms"));
  CHECK(report_to_json(r, true)["runtime_ms"] == 12.5);
  CHECK(report_to_json(r, false)["fails"] == 1);

  VerifyReport q = r;
  q.tower = "a,\"b\"";
  const std::string csv = reports_to_csv({r, q});
  CHECK(csv == "tower,theorem,instances,passes,fails,vacuous\n"
               "Q2(sqrt2),demo,2,1,1,false\n"
               "\"a,\"\"b\"\"\",demo,2,1,1,false\n");
}

TEST_CASE("catalog JSON") {
  const Json c2 = catalog_to_json(2);
  CHECK(c2.size() == 7);
  int unramified = 0, wild = 0;
  for (const auto& e : c2) {
    unramified += e["class"] == "unramified";
    wild += e["class"] == "wild";
    if (e["class"] == "wild") CHECK(e["d"].get<int>() == e["t"].get<int>() + 1);
  }
  CHECK(unramified == 1);
  CHECK(wild == 6);
  const Json c3 = catalog_to_json(3);
  CHECK(c3.size() == 3);
  int tame = 0;
  for (const auto& e : c3) tame += e["class"] == "tame";
  CHECK(tame == 2);
  CHECK_THROWS_AS(catalog_to_json(4), InputError);
}
