// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "epsilocal/harness.hpp"
#include "epsilocal/serialize.hpp"
#include "oracles.hpp"

using namespace epsilocal;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::vector<CatalogEntry> wild() {
  std::vector<CatalogEntry> out;
  for (auto& e : field_catalog(2)) {
    if (e.tower.ramified()) out.push_back(e);
  }
  return out;
}

std::string counts(const VerifyReport& r) {
  std::ostringstream os;
  os << r.passes << "/" << r.instances;
  if (r.vacuous) os << " vacuous";
  return os.str();
}

Outcome towers() {
  Outcome o;
  for (const auto& e : wild()) {
    const Tower& T = e.tower;
    const int d = T.different_exponent();
    const int t_enum = T.ramification_break_by_enumeration();
    const int a = omega_character(T).conductor();
    o.check(d == t_enum + 1 && (t_enum == 1 || t_enum == 2) && T.ramification_break() == t_enum && a == t_enum + 1,
            e.name + ": d = " + std::to_string(d) + ", t = " + std::to_string(t_enum) +
                " by enumeration, a(omega) = " + std::to_string(a));
  }
  return o;
}

Outcome spectrum() {
  Outcome o;
  for (const auto& e : wild()) {
    const Tower& T = e.tower;
    const VerifyReport r = verify_conductor_spectrum(T, 8);
    auto Q = unit_quotient(T, ResidueRing::Field::extension, 8);
    std::set<std::string> got;
    for (const auto& chi : enumerate_symplectic(T, 8)) got.insert(oracle::signature(chi.lifted(Q), *Q));
    const auto brute = oracle::brute_symplectic(T, 8);
    o.check(r.ok() && got == brute, e.name + ": spectrum " + counts(r) + ", " + std::to_string(got.size()) +
                                        " characters, oracle " + std::to_string(brute.size()));
  }
  return o;
}

Outcome even_sign() {
  Outcome o;
  for (const auto& e : wild()) {
    const VerifyReport r = verify_even_sign(e.tower, 4);
    if (r.vacuous) {
      o.lines.push_back("skip " + e.name + ": " + r.vacuity);
      continue;
    }
    std::map<std::string, int> by_check;
    for (const auto& w : r.failures) ++by_check[w.check];
    std::string detail;
    for (const auto& [k, v] : by_check) detail += "; " + k + " fails " + std::to_string(v);
    o.check(r.ok(), e.name + ": " + counts(r) + detail);
  }
  return o;
}

Outcome odd_sign() {
  Outcome o;
  std::map<std::string, int> g_angles;
  for (const auto& e : wild()) {
    const Tower& T = e.tower;
    const VerifyReport strict = verify_odd_sign(T, 8);
    o.lines.push_back("     " + e.name + ": strict hypotheses " +
                      (strict.vacuous ? "unsatisfiable (" + strict.vacuity + ")" : counts(strict)));
    if (!strict.vacuous) o.check(strict.ok(), e.name + ": strict " + counts(strict));
    const VerifyReport relaxed = verify_odd_sign_relaxed(T, 8);
    std::map<std::string, int> fails;
    for (const auto& w : relaxed.failures) ++fails[w.check];
    const int per = relaxed.instances / 4;
    o.check(fails["eps = chi(c') psi(1/c') G(Q)"] == 0,
            e.name + ": relaxed factorization eps = chi(c') psi(1/c') G(Q) on " + std::to_string(per));
    o.check(fails["G(Q) is an 8th root of unity"] == 0, e.name + ": G(Q) is an 8th root of unity");
    o.check(fails["G(Q)^4 = (-1)^[kappa_K:F_2]"] == 0, e.name + ": gamma^4 = (-1)^f");
    o.check(fails["eps = chi(-1)^l G(Q)"] == 0,
            e.name + ": eps = chi(-1)^l G(Q) fails on " + std::to_string(fails["eps = chi(-1)^l G(Q)"]) +
                " of " + std::to_string(per));
    const VerifyReport conj = check_central_sum(T, 8);
    for (const auto& n : conj.notes) {
      if (n.rfind("relaxed instances; G(Q) angles:", 0) == 0) g_angles[n.substr(32)]++;
    }
    o.lines.push_back("     " + e.name + ": G(Q) in {+1, -1} " + conj.verdict + " (" + counts(conj) + ")");
  }
  for (const auto& [k, v] : g_angles) o.lines.push_back("     G(Q) angles " + k + " on " + std::to_string(v) + " towers");
  return o;
}

Outcome oracles() {
  Outcome o;
  SuiteBounds b;
  for (const auto& e : field_catalog(2)) {
    const VerifyReport r = verify_oracles(e.tower, 8, b.random_characters, b.seed);
    const VerifyReport t = verify_twisting(e.tower, 8, b.twist_pairs, b.seed);
    o.check(r.ok() && t.ok(), e.name + ": Lamprecht-Tate vs naive " + counts(r) + " (" +
                                  std::to_string(b.random_characters) + " random characters), twist " + counts(t));
  }
  return o;
}

Outcome modulus() {
  Outcome o;
  for (i64 p : {2, 3}) {
    for (const auto& e : field_catalog(p)) {
      const VerifyReport r = verify_modulus_units(e.tower, p == 2 ? 8 : 4, 4);
      std::string note;
      for (const auto& n : r.notes) note += "; " + n;
      o.check(r.ok(), e.name + ": " + counts(r) + note);
    }
  }
  return o;
}

Outcome filtration() {
  Outcome o;
  for (i64 p : {2, 3}) {
    for (const auto& e : field_catalog(p)) {
      if (!e.tower.ramified()) continue;
      const VerifyReport r = verify_filtration(e.tower, 8);
      o.check(r.ok(), e.name + ": " + counts(r));
    }
  }
  return o;
}

Outcome tame() {
  Outcome o;
  for (i64 p : {2, 3, 5, 7, 13}) {
    const VerifyReport r = verify_tame_unramified(p, p == 2 ? 8 : 4);
    std::map<std::string, std::pair<int, int>> by;  // check -> (fails, total)
    for (const auto& w : r.failures) {
      const auto colon = w.check.find(": ");
      by[colon == std::string::npos ? w.check : w.check.substr(colon + 2)].first++;
    }
    std::string detail;
    for (const auto& [k, v] : by) detail += "; " + k + " fails " + std::to_string(v.first);
    o.check(r.ok(), "Q" + std::to_string(p) + ": " + counts(r) + detail);
    for (const auto& n : r.notes) o.lines.push_back("       " + n);
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  cfg.p = 2;
  cfg.parallel = 1;
  const std::string a = reports_to_json(run_verification(cfg), false).dump();
  cfg.parallel = 8;
  const std::string b = reports_to_json(run_verification(cfg), false).dump();
  const std::string c = reports_to_json(run_verification(cfg), false).dump();
  cfg.parallel = 1;
  const std::string csv1 = reports_to_csv(run_verification(cfg));
  cfg.parallel = 3;
  const std::string csv3 = reports_to_csv(run_verification(cfg));
  o.check(a == b, "parallel 1 vs 8: " + std::to_string(a.size()) + " bytes");
  o.check(b == c, "repeated parallel 8 run");
  o.check(csv1 == csv3, "CSV parallel 1 vs 3");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "tower invariants", 1, towers},
      {2, "conductor spectrum at M = 8 with brute-force oracle", 10, spectrum},
      {3, "even-conductor sign chi(-1)^d", 30, even_sign},
      {4, "odd-conductor sign and central sum", 30, odd_sign},
      {5, "oracle equivalence and Deligne twists", 60, oracles},
      {6, "sum modulus and unit independence", 30, modulus},
      {7, "filtration laws to level 8", 5, filtration},
      {8, "tame and unramified signs", 30, tame},
      {9, "determinism", 5, determinism},
  };
  bool all = true;
  std::vector<std::string> summary;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::ostringstream head;
    head.precision(2);
    head << std::fixed << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << " ("
         << s << " s, budget " << c.budget_s << " s" << (in_time ? "" : ", over budget") << ")";
    std::cout << head.str() << "\n";
    for (const auto& l : o.lines) std::cout << "    " << l << "\n";
    summary.push_back(head.str());
  }
  std::cout << "\n";
  for (const auto& s : summary) std::cout << s << "\n";
  return all ? 0 : 1;
}
