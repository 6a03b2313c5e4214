#include "doctest.h"

#include <algorithm>

#include "epsilocal/error.hpp"
#include "epsilocal/harness.hpp"
#include "epsilocal/serialize.hpp"

using namespace epsilocal;

namespace {

Tower named(i64 p, const std::string& name) {
  for (const auto& e : field_catalog(p)) {
    if (e.name == name) return e.tower;
  }
  FAIL("no tower " << name);
  return field_catalog(p)[0].tower;
}

bool only_failures_of(const VerifyReport& r, const std::string& suffix) {
  return std::all_of(r.failures.begin(), r.failures.end(), [&](const Witness& w) {
    return w.check.size() >= suffix.size() &&
           w.check.compare(w.check.size() - suffix.size(), suffix.size(), suffix) == 0;
  });
}

std::vector<Tower> wild_towers() {
  std::vector<Tower> out;
  for (const auto& e : field_catalog(2)) {
    if (e.tower.ramified()) out.push_back(e.tower);
  }
  return out;
}

}  // namespace

TEST_CASE("conductor spectrum holds on every wild tower") {
  for (const Tower& T : wild_towers()) {
    const VerifyReport r = verify_conductor_spectrum(T, 8);
    CHECK(r.ok());
    CHECK(!r.vacuous);
    CHECK(r.instances > 0);
  }
  CHECK(verify_conductor_spectrum(field_catalog(2)[0].tower, 8).vacuous);
}

TEST_CASE("even-sign: engines agree, the sign law fails for half") {
  int gated = 0;
  for (const Tower& T : wild_towers()) {
    const VerifyReport r = verify_even_sign(T, 4);
    if (!T.trace_zero_uniformizer()) {
      CHECK(r.vacuous);
      continue;
    }
    ++gated;
    CHECK(r.gating);
    CHECK(!r.vacuous);
    CHECK(r.failures.size() == 60);
    CHECK(only_failures_of(r, "eps = chi(-1)^d"));
  }
  CHECK(gated == 4);
}

TEST_CASE("odd-sign hypotheses are never satisfiable on quadratic towers") {
  for (const Tower& T : wild_towers()) {
    const VerifyReport r = verify_odd_sign(T, 8);
    CHECK(r.vacuous);
    CHECK(r.instances == 0);
    CHECK(r.vacuity.find("no odd n(psi)") != std::string::npos);
  }
}

TEST_CASE("relaxed odd-sign: factorization holds, the stated form does not") {
  for (const Tower& T : wild_towers()) {
    const VerifyReport r = verify_odd_sign_relaxed(T, 8);
    CHECK(!r.gating);
    CHECK(r.instances > 0);
    CHECK(!r.ok());
    CHECK(r.verdict == "refutes");
    CHECK(only_failures_of(r, "eps = chi(-1)^l G(Q)"));
  }
}

TEST_CASE("central sums are primitive 8th roots, not signs") {
  for (const Tower& T : wild_towers()) {
    const VerifyReport r = check_central_sum(T, 8);
    CHECK(!r.gating);
    CHECK(r.verdict == "refutes");
    CHECK(r.passes == 0);
    CHECK(r.failures.size() == static_cast<std::size_t>(r.instances));
  }
}

TEST_CASE("claim suites that hold") {
  for (const auto& e : field_catalog(2)) {
    CHECK_MESSAGE(verify_filtration(e.tower, 8).ok(), e.name);
    CHECK_MESSAGE(verify_factorization(e.tower, 8).ok(), e.name);
    CHECK_MESSAGE(verify_oracles(e.tower, 8, 20, 1).ok(), e.name);
    CHECK_MESSAGE(verify_twisting(e.tower, 8, 10, 1).ok(), e.name);
    CHECK_MESSAGE(verify_modulus_units(e.tower, 8, 4).ok(), e.name);
  }
  const VerifyReport f = verify_filtration(named(2, "Q2(sqrt2)"), 8);
  CHECK(f.instances >= 10);
}

TEST_CASE("tame and unramified tables") {
  const VerifyReport r2 = verify_tame_unramified(2, 8);
  CHECK(r2.ok());
  CHECK(r2.instances > 0);

  const VerifyReport r3 = verify_tame_unramified(3, 4);
  CHECK(only_failures_of(r3, "even conductor sign by q_F mod 4"));
  CHECK(r3.failures.size() == 16);

  for (i64 p : {5, 13}) {
    const VerifyReport r = verify_tame_unramified(p, 4);
    CHECK(only_failures_of(r, "even conductor sign by q_F mod 4"));
    int psi_prime = 0;
    for (const auto& n : r.notes) psi_prime += n.find("psi'_-1") != std::string::npos;
    CHECK(psi_prime == 0);
  }
  const VerifyReport r7 = verify_tame_unramified(7, 4);
  CHECK(only_failures_of(r7, "even conductor sign by q_F mod 4"));
}

TEST_CASE("run_verification is deterministic and validates its input") {
  RunConfig cfg;
  cfg.p = 3;
  cfg.parallel = 1;
  const auto a = reports_to_json(run_verification(cfg), false).dump();
  cfg.parallel = 6;
  const auto b = reports_to_json(run_verification(cfg), false).dump();
  CHECK(a == b);

  cfg.p = 2;
  cfg.suites = {"conductor-spectrum", "even-sign"};
  const auto reports = run_verification(cfg);
  CHECK(reports.size() == 14);
  CHECK(!all_gating_ok(reports));
  cfg.suites = {"conductor-spectrum"};
  CHECK(all_gating_ok(run_verification(cfg)));

  cfg.suites = {"nope"};
  CHECK_THROWS_AS(run_verification(cfg), InputError);
  cfg.suites = {};
  cfg.p = 4;
  CHECK_THROWS_AS(run_verification(cfg), InputError);
}

TEST_CASE("suite tags") {
  const auto tags = suite_tags();
  CHECK(tags.size() == 11);
  CHECK(std::find(tags.begin(), tags.end(), "central-sum-pm1") != tags.end());
}
