#include "epsilocal/harness.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "epsilocal/error.hpp"
#include "epsilocal/serialize.hpp"

namespace epsilocal {
namespace {

std::string sign_str(const Angle& a) {
  if (a.is_zero()) return "+1";
  if (a == Angle(1, 2)) return "-1";
  return "exp(2 pi i " + a.str() + ")";
}

std::string root_str(const std::optional<Angle>& a) { return a ? sign_str(*a) : "not a root of unity"; }

std::string value_bytes(const CycNumber& x) { return cyc_to_json(x).dump(); }

VerifyReport start(std::string theorem, const Tower& tower) {
  VerifyReport r;
  r.theorem = std::move(theorem);
  r.tower = describe(tower);
  return r;
}

VerifyReport vacuous(VerifyReport r, std::string why) {
  r.vacuous = true;
  r.vacuity = std::move(why);
  return r;
}

std::vector<MultChar> with_conductor(const std::vector<MultChar>& chars, int a) {
  std::vector<MultChar> out;
  for (const auto& chi : chars) {
    if (chi.conductor() == a) out.push_back(chi);
  }
  return out;
}

bool is_wild(const Tower& T) { return T.ramified() && T.prime() == 2; }

// The symplectic character with the same unit part and chi(pi_K) shifted by 1/2.
std::optional<MultChar> branch_partner(const MultChar& chi, const std::vector<MultChar>& chars) {
  for (const auto& other : chars) {
    if (other.unit_exponents() == chi.unit_exponents() &&
        other.pi_value() == chi.pi_value() + Angle(1, 2)) {
      return other;
    }
  }
  return std::nullopt;
}

// Representatives of the units of F kept when rescaling a trace-zero twist.
std::vector<i64> rescaling_units(i64 p) {
  if (p == 2) return {1, 3, 5, 7, -1};
  std::vector<i64> out{1};
  for (i64 u = 2; u < p && out.size() < 5; ++u) out.push_back(u);
  if (out.size() < 5) out.push_back(-1);
  return out;
}

int unramified_cap(i64 p) { return p == 2 ? 5 : (p == 3 ? 3 : 2); }
int tame_cap(i64 p) { return p <= 7 ? 4 : 2; }

std::string parity_witness(const Tower& T) {
  const int d = T.different_exponent();
  std::ostringstream os;
  os << "Tr(c) = 0 forces c = lambda (2 theta + a1) with lambda in F, so v_K(c) = " << d
     << " + " << T.e() << " v_F(lambda) = " << d % 2 << " mod 2 and n(psi) = " << T.e()
     << " n(psi_F) + v_K(c) + " << d << " = 0 mod 2; no odd n(psi) is realizable";
  return os.str();
}

}  // namespace

void VerifyReport::record(bool pass, Witness w) {
  ++instances;
  if (pass) {
    ++passes;
  } else {
    failures.push_back(std::move(w));
  }
}

std::string describe(const Tower& tower) {
  std::ostringstream os;
  os << "Q" << tower.prime() << "[x^2";
  const Rational a1 = tower.a1(), a0 = tower.a0();
  if (a1.num != 0) os << (a1.num < 0 ? " - " : " + ") << Rational{std::abs(a1.num), a1.den}.str() << "x";
  if (a0.num != 0) os << (a0.num < 0 ? " - " : " + ") << Rational{std::abs(a0.num), a0.den}.str();
  os << "]";
  return os.str();
}

std::string describe(const MultChar& chi) {
  std::ostringstream os;
  os << "chi(level " << chi.level() << ", pi " << chi.pi_value().str() << ", exps [";
  for (std::size_t i = 0; i < chi.unit_exponents().size(); ++i) {
    os << (i ? "," : "") << chi.unit_exponents()[i];
  }
  os << "], a " << chi.conductor() << ")";
  return os.str();
}

std::string describe(const AddChar& psi) {
  std::ostringstream os;
  os << "psi(c " << psi.twist().str() << ", n_F " << psi.base_conductor() << ", n "
     << psi.conductor() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

VerifyReport verify_conductor_spectrum(const Tower& T, int M) {
  VerifyReport r = start("conductor-spectrum", T);
  if (!T.ramified()) return vacuous(std::move(r), "unramified: there is no ramification break");
  const int t = T.ramification_break();
  const int d = T.different_exponent();
  const int t_enum = T.ramification_break_by_enumeration();
  r.record(d == t_enum + 1, {"different = break + 1", "", "", std::to_string(t_enum + 1),
                             std::to_string(d)});
  const int a_omega = omega_character(T).conductor();
  r.record(a_omega == t + 1,
           {"a(omega) = t + 1", "", "", std::to_string(t + 1), std::to_string(a_omega)});

  std::map<int, int> histogram;
  bool odd_family = false, even_family = false;
  for (const auto& chi : enumerate_symplectic(T, M)) {
    const int a = chi.conductor();
    ++histogram[a];
    const bool allowed = a == 2 * t + 1 || (a % 2 == 0 && a >= 2 * (t + 1));
    odd_family |= a == 2 * t + 1;
    even_family |= a % 2 == 0 && a >= 2 * (t + 1);
    r.record(allowed, {"conductor in {2t+1} or even >= 2t+2", describe(chi), "",
                       "2t+1 = " + std::to_string(2 * t + 1) + " or even >= " +
                           std::to_string(2 * t + 2),
                       std::to_string(a)});
  }
  if (M >= 2 * t + 2) {
    r.record(odd_family, {"odd family nonempty", "", "", "present", odd_family ? "present" : "absent"});
    r.record(even_family, {"even family nonempty", "", "", "present", even_family ? "present" : "absent"});
  }
  std::ostringstream os;
  os << "t = " << t << ", d = " << d << ", conductors:";
  for (const auto& [a, n] : histogram) os << " " << a << "x" << n;
  r.notes.push_back(os.str());
  return r;
}

VerifyReport verify_even_sign(const Tower& T, int max_d) {
  VerifyReport r = start("even-sign", T);
  if (!is_wild(T)) return vacuous(std::move(r), "not a wild tower");
  if (!T.trace_zero_uniformizer()) {
    return vacuous(std::move(r), "pi_K^2 = -pi_F fails: Tr(pi_K) = " +
                                     Rational{-T.a1().num, T.a1().den}.str() + " != 0");
  }
  const auto psi0 = trace_zero_psi(T, 0);
  if (!psi0) return vacuous(std::move(r), "no trace-zero twist gives n(psi) = 0");

  std::vector<AddChar> psis;
  for (i64 u : rescaling_units(T.prime())) {
    psis.push_back(AddChar::make(T, psi0->twist().scaled(T.base(u)), psi0->base_conductor()));
  }
  const auto chars = enumerate_symplectic(T, 2 * max_d);
  int paper_gauge = 0, even_chars = 0, branch_same = 0, branch_pairs = 0;
  std::map<i64, std::pair<int, int>> rescale_flips;
  for (const auto& chi : chars) {
    const int a = chi.conductor();
    if (a % 2 != 0) continue;
    const int d = a / 2;
    r.record(d >= 2, {"d >= 2", describe(chi), "", ">= 2", std::to_string(d)});
    if (d < 2 || d > max_d) continue;
    ++even_chars;
    const Angle expected = chi.eval(T.base(-1)).times(d);
    if (is_gauge(chi, *psi0, T.pi_K_power(2 * d), d)) ++paper_gauge;
    std::optional<Angle> first;
    for (std::size_t k = 0; k < psis.size(); ++k) {
      const AddChar& psi = psis[k];
      const EpsilonValue naive = epsilon_naive(chi, psi);
      const std::string bytes = value_bytes(naive.value);
      const EpsilonValue even = epsilon_even(chi, psi, solve_gauge(chi, psi, d));
      bool same = value_bytes(even.value) == bytes;
      for (int m = 0; m <= d; ++m) {
        same &= value_bytes(epsilon_lamprecht(chi, psi, solve_gauge(chi, psi, m)).value) == bytes;
      }
      r.record(same, {"naive, even and Lamprecht-Tate byte-identical", describe(chi), describe(psi),
                      bytes, "mismatch"});
      r.record(naive.root && *naive.root == expected,
               {"eps = chi(-1)^d", describe(chi), describe(psi), sign_str(expected),
                root_str(naive.root)});
      if (k == 0) {
        first = naive.root;
        if (const auto partner = branch_partner(chi, chars)) {
          ++branch_pairs;
          if (epsilon_naive(*partner, psi).root == naive.root) ++branch_same;
        }
      } else {
        const i64 u = rescaling_units(T.prime())[k];
        auto& [flips, total] = rescale_flips[u];
        ++total;
        if (naive.root != first) ++flips;
      }
    }
  }
  r.notes.push_back("psi = " + describe(*psi0));
  r.notes.push_back("c' = pi_K^(2d) is a gauge at level d for " + std::to_string(paper_gauge) +
                    " of " + std::to_string(even_chars) + " characters");
  r.notes.push_back("chi(pi_K) branch leaves eps unchanged for " + std::to_string(branch_same) +
                    " of " + std::to_string(branch_pairs) + " pairs");
  for (const auto& [u, ft] : rescale_flips) {
    r.notes.push_back("rescaling c by " + std::to_string(u) + " flips eps for " +
                      std::to_string(ft.first) + " of " + std::to_string(ft.second) +
                      " characters; omega(" + std::to_string(u) + ") = " +
                      sign_str(omega_character(T).eval(T.base(u))));
  }
  return r;
}

namespace {

// Checks eps = chi(-1)^l G(Q) and the pieces around it for one (chi, psi).
void odd_sign_instance(VerifyReport& r, const MultChar& chi, const AddChar& psi, int& paper_gauge) {
  const Tower& T = chi.tower();
  const int t = T.ramification_break();
  const int n = psi.conductor();
  const int l = (n - 1) / 2;
  const EpsilonValue naive = epsilon_naive(chi, psi);
  const GaugeElement gauge = solve_gauge(chi, psi, t);
  const EpsilonValue odd = epsilon_odd(chi, psi, gauge);
  const CentralSum cs = g_of_q(chi, psi, gauge);
  if (is_gauge(chi, psi, T.pi_K_power(chi.conductor() + n), t)) ++paper_gauge;
  r.record(value_bytes(odd.value) == value_bytes(naive.value),
           {"eps = chi(c') psi(1/c') G(Q)", describe(chi), describe(psi), root_str(naive.root),
            root_str(odd.root)});
  const bool eighth = cs.G_root && 8 % cs.G_root->order() == 0;
  r.record(eighth, {"G(Q) is an 8th root of unity", describe(chi), describe(psi), "8th root",
                    root_str(cs.G_root)});
  r.record(cs.gamma4_matches, {"G(Q)^4 = (-1)^[kappa_K:F_2]", describe(chi), describe(psi),
                               T.f() % 2 == 0 ? "+1" : "-1", "mismatch"});
  const Angle sign = chi.eval(T.base(-1)).times(l);
  const std::optional<Angle> expected =
      cs.G_root ? std::optional<Angle>(sign + *cs.G_root) : std::nullopt;
  r.record(expected && naive.root && *naive.root == *expected,
           {"eps = chi(-1)^l G(Q)", describe(chi), describe(psi), root_str(expected),
            root_str(naive.root)});
}

}  // namespace

VerifyReport verify_odd_sign(const Tower& T, int M) {
  VerifyReport r = start("odd-sign", T);
  if (!T.ramified() || T.ramification_break() < 1) {
    return vacuous(std::move(r), "needs a wild tower (t >= 1)");
  }
  const int t = T.ramification_break();
  // Every trace-zero twist is lambda (2 theta + a1); scan both the formula and
  // the triviality depth for odd conductors.
  std::vector<int> odd_n;
  for (int n = -9; n <= 9; n += 2) {
    if (trace_zero_psi(T, n)) odd_n.push_back(n);
  }
  int scanned = 0, scanned_odd = 0;
  for (int j = -3; j <= 3; ++j) {
    for (i64 u : rescaling_units(T.prime())) {
      const ExtElement c =
          T.trace_zero_generator().scaled(T.base(T.prime()).pow(j) * T.base(u));
      const int n = AddChar::make(T, c, 0).conductor_by_scan();
      ++scanned;
      if (n % 2 != 0) ++scanned_odd;
    }
  }
  r.notes.push_back("trace-zero twists scanned by triviality depth: " + std::to_string(scanned) +
                    ", odd conductors among them: " + std::to_string(scanned_odd));
  if (odd_n.empty() && scanned_odd == 0) return vacuous(std::move(r), parity_witness(T));

  int paper_gauge = 0;
  for (const auto& chi : with_conductor(enumerate_symplectic(T, std::max(M, 2 * t + 1)), 2 * t + 1)) {
    for (int n : odd_n) odd_sign_instance(r, chi, *trace_zero_psi(T, n), paper_gauge);
  }
  r.notes.push_back("c' = pi_K^(a + n) is a gauge for " + std::to_string(paper_gauge) + " of " +
                    std::to_string(r.instances / 4) + " instances");
  r.verdict = r.ok() ? "supports" : "refutes";
  return r;
}

VerifyReport verify_odd_sign_relaxed(const Tower& T, int M) {
  VerifyReport r = start("odd-sign-relaxed", T);
  r.gating = false;
  if (!T.ramified() || T.ramification_break() < 1) {
    r.verdict = "vacuous";
    return vacuous(std::move(r), "needs a wild tower (t >= 1)");
  }
  const int t = T.ramification_break();
  r.vacuity = parity_witness(T) + "; psi = pi_K^(n - d) (psi_F o Tr) is used instead";
  int paper_gauge = 0;
  for (const auto& chi : with_conductor(enumerate_symplectic(T, std::max(M, 2 * t + 1)), 2 * t + 1)) {
    for (int n : {-1, 1, 3}) odd_sign_instance(r, chi, uniformizer_psi(T, n), paper_gauge);
  }
  r.notes.push_back("c' = pi_K^(a + n) is a gauge for " + std::to_string(paper_gauge) + " of " +
                    std::to_string(r.instances / 4) + " instances");
  r.verdict = r.ok() ? "supports" : "refutes";
  return r;
}

VerifyReport check_central_sum(const Tower& T, int M) {
  VerifyReport r = start("central-sum-pm1", T);
  r.gating = false;
  if (!T.ramified() || T.ramification_break() < 1) {
    r.verdict = "vacuous";
    return vacuous(std::move(r), "needs a wild tower (t >= 1)");
  }
  const int t = T.ramification_break();
  std::vector<std::pair<AddChar, bool>> psis;
  for (int n = -9; n <= 9; n += 2) {
    if (auto psi = trace_zero_psi(T, n)) psis.emplace_back(*psi, true);
  }
  const int strict = static_cast<int>(psis.size());
  if (strict == 0) {
    r.vacuity = parity_witness(T) + "; tabulating psi = pi_K^(n - d) (psi_F o Tr) instead";
    for (int n : {-1, 1, 3}) psis.emplace_back(uniformizer_psi(T, n), false);
  }
  std::map<std::string, int> table;
  int c_tau_found = 0, gamma2_ok = 0;
  for (const auto& chi : with_conductor(enumerate_symplectic(T, std::max(M, 2 * t + 1)), 2 * t + 1)) {
    for (const auto& [psi, _] : psis) {
      const CentralSum cs = g_of_q(chi, psi, solve_gauge(chi, psi, t));
      const bool pm1 = cs.G_root && (cs.G_root->is_zero() || *cs.G_root == Angle(1, 2));
      ++table[cs.G_root ? cs.G_root->str() : "none"];
      if (cs.c_tau) ++c_tau_found;
      if (cs.gamma2_matches) ++gamma2_ok;
      r.record(pm1, {"G(Q) in {+1, -1}", describe(chi), describe(psi), "+1 or -1",
                     root_str(cs.G_root)});
    }
  }
  if (r.instances == 0) {
    r.verdict = "vacuous";
  } else {
    r.verdict = r.failures.empty() ? "supports" : "refutes";
  }
  std::ostringstream os;
  os << (strict ? "strict" : "relaxed") << " instances; G(Q) angles:";
  for (const auto& [angle, count] : table) os << " " << angle << "x" << count;
  r.notes.push_back(os.str());
  r.notes.push_back("c'(tau) solvable for " + std::to_string(c_tau_found) + " of " +
                    std::to_string(r.instances) + "; G(Q)^2 = Qbar(c'(tau)) for " +
                    std::to_string(gamma2_ok));
  return r;
}

VerifyReport verify_tame_unramified(i64 p, int M) {
  VerifyReport r;
  r.theorem = "tame-unramified";
  r.tower = "Q" + std::to_string(p) + " catalog";
  for (const auto& entry : field_catalog(p)) {
    const Tower& T = entry.tower;
    if (!T.ramified()) {
      const int m = std::min(M, unramified_cap(p));
      const auto psi = trace_zero_psi(T, 0);
      int rows[2][2] = {{0, 0}, {0, 0}};
      for (const auto& chi : enumerate_symplectic(T, m)) {
        const int a = chi.conductor();
        if (a < 1) continue;
        const Angle expected = a % 2 == 0 ? Angle() : Angle(1, 2);
        const EpsilonValue eps = epsilon_naive(chi, *psi);
        const bool pass = eps.root && *eps.root == expected;
        ++rows[a % 2][pass ? 1 : 0];
        r.record(pass, {entry.name + ": unramified sign by parity of a", describe(chi),
                        describe(*psi), sign_str(expected), root_str(eps.root)});
      }
      r.notes.push_back(entry.name + " (M = " + std::to_string(m) + "): even a " +
                        std::to_string(rows[0][1]) + " pass " + std::to_string(rows[0][0]) +
                        " fail, odd a " + std::to_string(rows[1][1]) + " pass " +
                        std::to_string(rows[1][0]) + " fail");
      continue;
    }
    if (is_wild(T)) continue;
    const int m = std::min(M, tame_cap(p));
    const int a_omega = omega_character(T).conductor();
    r.record(a_omega == 1, {entry.name + ": a(omega) = 1", "", "", "1", std::to_string(a_omega)});
    const auto chars = enumerate_symplectic(T, m);
    const AddChar psi0 = *trace_zero_psi(T, 0);
    const AddChar psi_minus1 = AddChar::make(T, T.from_base(T.base(1, 2)), -1);
    for (const auto& chi : with_conductor(chars, 1)) {
      const auto partner = branch_partner(chi, chars);
      if (partner && chi.pi_value() < partner->pi_value()) {
        const EpsilonValue e1 = epsilon_naive(chi, psi0);
        const EpsilonValue e2 = epsilon_naive(*partner, psi0);
        const bool flip = e1.root && e2.root && *e2.root == *e1.root + Angle(1, 2);
        r.record(flip, {entry.name + ": unramified twist by mu flips eps", describe(chi),
                        describe(psi0), root_str(e1.root ? std::optional<Angle>(*e1.root + Angle(1, 2)) : std::nullopt),
                        root_str(e2.root)});
      }
      const EpsilonValue e = epsilon_naive(chi, psi_minus1);
      if (p % 4 == 1) {
        r.record(e.root && e.root->is_zero(),
                 {entry.name + ": eps(omega~, psi'_-1) = (-1)^(s-1), s = 1", describe(chi),
                  describe(psi_minus1), "+1", root_str(e.root)});
      } else {
        r.notes.push_back(entry.name + ": eps(" + describe(chi) + ", psi'_-1) = " +
                          root_str(e.root) + " (q_F = p^1, no prediction)");
      }
    }
    int pass_count = 0, total = 0;
    for (const auto& chi : chars) {
      const int a = chi.conductor();
      if (a % 2 != 0 || a < 2) continue;
      const Angle expected = p % 4 == 1 ? Angle() : Angle(a / 2, 2);
      const EpsilonValue eps = epsilon_naive(chi, psi0);
      const bool pass = eps.root && *eps.root == expected;
      ++total;
      if (pass) ++pass_count;
      r.record(pass, {entry.name + ": even conductor sign by q_F mod 4", describe(chi),
                      describe(psi0), sign_str(expected), root_str(eps.root)});
    }
    r.notes.push_back(entry.name + " (M = " + std::to_string(m) + "): even-conductor table " +
                      std::to_string(pass_count) + " of " + std::to_string(total));
  }
  if (p % 2 == 1) {
    const CycNumber g = quadratic_gauss_sum(p);
    const int sign = legendre(p - 1, p);
    r.record(g * g == CycNumber::from_rational(sign * p, 1, g.conductor()),
             {"Gauss sum squared = (-1|p) p", "", "", std::to_string(sign * p), "mismatch"});
    const auto z = g.to_complex();
    const bool positive = p % 4 == 1 ? (z.real() > 0 && std::abs(z.imag()) < 1e-9)
                                     : (z.imag() > 0 && std::abs(z.real()) < 1e-9);
    r.record(positive, {"Gauss sum = sqrt(p) or i sqrt(p)", "", "",
                        p % 4 == 1 ? "sqrt(p)" : "i sqrt(p)",
                        "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")"});
    r.record(sqrt_prime_power(p, 1) * sqrt_prime_power(p, 1) == CycNumber::from_rational(p, 1),
             {"sqrt(p)^2 = p", "", "", std::to_string(p), "mismatch"});
  }
  return r;
}

VerifyReport verify_filtration(const Tower& T, int max_n) {
  VerifyReport r = start("filtration", T);
  if (!T.ramified()) return vacuous(std::move(r), "unramified tower");
  const i64 p = T.prime();
  const int t = T.ramification_break();
  auto Psi = [t](int n) { return n <= t ? n : t + 2 * (n - t); };
  r.record(Psi(t) == t, {"Psi(t) = t", "", "", std::to_string(t), std::to_string(Psi(t))});

  // Intersections with F: U_K^n meets F^x in U_F^ceil(n/2).
  {
    const int L = (max_n + 2) / 2;
    const ResidueRing rf(T, ResidueRing::Field::base, L);
    const ResidueRing rk(T, ResidueRing::Field::extension, 2 * L);
    for (int n = 1; n <= max_n; ++n) {
      bool holds = true;
      for (u64 u = 0; u < rf.size(); ++u) {
        if (!rf.is_unit(u)) continue;
        const u64 k = rk.key_of(T.from_base(rf.base_element(u)));
        if (rk.in_unit_level(k, n) != rf.in_unit_level(u, (n + 1) / 2)) holds = false;
      }
      r.record(holds, {"U_K^" + std::to_string(n) + " cap F^x = U_F^" + std::to_string((n + 1) / 2),
                       "", "", "equal", "differ"});
    }
  }

  // Norms: N(U_K^Psi(n)) = U_F^n for n > t, read on U_F / U_F^(n+1).
  int top = max_n;
  while (top > t + 1) {
    double size = 1;
    for (int i = 0; i < 2 * (top + 1); ++i) size *= static_cast<double>(p);
    if (size <= static_cast<double>(1 << 20)) break;
    --top;
  }
  if (top < max_n) {
    r.notes.push_back("norm identity checked up to n = " + std::to_string(top) +
                      " (quotient size bound)");
  }
  for (int n = 1; n <= top; ++n) {
    const ResidueRing rk(T, ResidueRing::Field::extension, 2 * (n + 1));
    const ResidueRing rf(T, ResidueRing::Field::base, n + 1);
    const u64 a1 = rf.key_of(T.core()->a1), a0 = rf.key_of(T.core()->a0);
    std::set<u64> image;
    for (u64 key = 0; key < rk.size(); ++key) {
      if (!rk.is_unit(key) || !rk.in_unit_level(key, Psi(n))) continue;
      const u64 x0 = rk.coord0(key) % rf.size(), x1 = rk.coord1(key) % rf.size();
      const u64 norm = rf.add(rf.sub(rf.mul(x0, x0), rf.mul(a1, rf.mul(x0, x1))),
                              rf.mul(a0, rf.mul(x1, x1)));
      image.insert(norm);
    }
    std::set<u64> target;
    for (u64 u = 0; u < rf.size(); ++u) {
      if (rf.is_unit(u) && rf.in_unit_level(u, n)) target.insert(u);
    }
    if (n > t) {
      r.record(image == target,
               {"N(U_K^" + std::to_string(Psi(n)) + ") = U_F^" + std::to_string(n), "", "",
                std::to_string(target.size()) + " classes mod p^" + std::to_string(n + 1),
                std::to_string(image.size()) + " classes"});
    } else {
      r.notes.push_back("n = " + std::to_string(n) + " <= t: N(U_K^" + std::to_string(Psi(n)) +
                        ") covers " + std::to_string(image.size()) + " of " +
                        std::to_string(target.size()) + " classes of U_F^n mod p^(n+1)");
    }
  }
  return r;
}

VerifyReport verify_factorization(const Tower& T, int M) {
  VerifyReport r = start("factorization", T);
  if (!T.ramified()) return vacuous(std::move(r), "unramified tower");
  const int t = T.ramification_break();
  const auto chars = enumerate_symplectic(T, M);
  const auto odd = with_conductor(chars, 2 * t + 1);
  if (odd.empty()) return vacuous(std::move(r), "no symplectic character of conductor 2t + 1 below M");
  const MultChar& chi_odd = odd.front();
  r.notes.push_back("chi_odd = " + describe(chi_odd));
  for (const auto& chi : chars) {
    const MultChar eta = chi * chi_odd.lifted(chi.quotient_ptr()).inverse();
    const bool trivial_on_F = restrict_to_F(eta).is_trivial();
    r.record(trivial_on_F, {"eta = chi chi_odd^-1 trivial on F^x", describe(chi), "", "trivial",
                            describe(restrict_to_F(eta))});
    r.record(eta * chi_odd.lifted(chi.quotient_ptr()) == chi,
             {"chi = eta chi_odd", describe(chi), "", describe(chi), "differs"});
    if (eta.conductor() != chi_odd.conductor()) {
      const int expected = std::max(eta.conductor(), chi_odd.conductor());
      r.record(chi.conductor() == expected, {"a(chi) = max(a(eta), a(chi_odd))", describe(chi), "",
                                             std::to_string(expected), std::to_string(chi.conductor())});
    }
    if (chi.conductor() % 2 == 0) {
      r.record(chi.conductor() == eta.conductor(), {"a(chi) = a(eta) for even a(chi)", describe(chi), "",
                                                    std::to_string(chi.conductor()),
                                                    std::to_string(eta.conductor())});
    }
  }
  return r;
}

VerifyReport verify_oracles(const Tower& T, int M, int random_count, u64 seed) {
  VerifyReport r = start("oracles", T);
  if (!T.ramified()) M = std::min(M, unramified_cap(T.prime()) - 1);
  auto compare_all_levels = [&](const MultChar& chi, const AddChar& psi) {
    const EpsilonValue naive = epsilon_naive(chi, psi);
    const std::string bytes = value_bytes(naive.value);
    for (int m = 0; 2 * m <= chi.conductor(); ++m) {
      const EpsilonValue lt = epsilon_lamprecht(chi, psi, solve_gauge(chi, psi, m));
      r.record(value_bytes(lt.value) == bytes,
               {"Lamprecht-Tate at m = " + std::to_string(m) + " equals naive", describe(chi),
                describe(psi), root_str(naive.root), root_str(lt.root)});
    }
    return naive;
  };
  const auto psi0 = trace_zero_psi(T, 0);
  for (const auto& chi : enumerate_symplectic(T, M)) {
    if (chi.conductor() < 1) continue;
    const EpsilonValue naive = compare_all_levels(chi, *psi0);
    r.record(naive.cls == ValueClass::plus_one || naive.cls == ValueClass::minus_one,
             {"symplectic eps is +1 or -1 for psi trivial on F", describe(chi), describe(*psi0),
              "+1 or -1", root_str(naive.root)});
  }
  std::mt19937_64 rng(seed);
  auto quotient = unit_quotient(T, ResidueRing::Field::extension, M);
  int done = 0;
  while (done < random_count) {
    const MultChar chi = random_character(quotient, rng, 8);
    if (chi.conductor() < 1) continue;
    const int n = std::uniform_int_distribution<int>(-2, 2)(rng);
    compare_all_levels(chi, uniformizer_psi(T, n));
    ++done;
  }
  return r;
}

VerifyReport verify_twisting(const Tower& T, int M, int pairs, u64 seed) {
  VerifyReport r = start("twisting", T);
  if (!T.ramified()) M = std::min(M, std::max(2, unramified_cap(T.prime()) - 1));
  if (M < 2) return vacuous(std::move(r), "needs characters of conductor >= 2");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto qa = unit_quotient(T, ResidueRing::Field::extension, M);
  std::map<int, UnitQuotientPtr> qb;
  int done = 0, mu_checked = 0, draws = 0;
  while (done < pairs) {
    if (++draws > 1000 * pairs) throw InvariantError("twisting: no characters of conductor >= 2");
    const MultChar alpha = random_character(qa, rng, 8);
    const int a = alpha.conductor();
    if (a < 2) continue;
    const int lb = a / 2;
    if (!qb.count(lb)) qb[lb] = unit_quotient(T, ResidueRing::Field::extension, lb);
    const MultChar beta =
        done % 5 == 0 ? MultChar::from_exponents(qb[lb], Angle(1, 2), std::vector<i64>(qb[lb]->orders().size(), 0))
                      : random_character(qb[lb], rng, 4);
    const int n = std::uniform_int_distribution<int>(-2, 2)(rng);
    const AddChar psi = uniformizer_psi(T, n);
    const GaugeElement gauge = solve_gauge(alpha, psi, a / 2);
    const EpsilonValue twisted = deligne_twist(alpha, beta, psi, gauge);
    const EpsilonValue direct = epsilon_naive(alpha * beta.lifted(alpha.quotient_ptr()), psi);
    r.record(twisted.value == direct.value,
             {"beta(c) eps(alpha, psi) = eps(alpha beta, psi)", describe(alpha) + " * " + describe(beta),
              describe(psi), root_str(direct.root), root_str(twisted.root)});
    if (beta.conductor() == 0 && beta.pi_value() == Angle(1, 2)) {
      ++mu_checked;
      const EpsilonValue plain = epsilon_naive(alpha, psi);
      const int v = a + n;
      const Angle expected = plain.root ? *plain.root + Angle(v, 2) : Angle();
      r.record(plain.root && direct.root && *direct.root == expected,
               {"mu twist multiplies eps by (-1)^(a + n(psi))", describe(alpha), describe(psi),
                sign_str(expected), root_str(direct.root)});
    }
    ++done;
  }
  r.notes.push_back("unramified twists mu among the pairs: " + std::to_string(mu_checked));
  return r;
}

VerifyReport verify_modulus_units(const Tower& T, int M, int max_a) {
  VerifyReport r = start("modulus-units", T);
  if (!T.ramified()) M = std::min(M, unramified_cap(T.prime()) - 1);
  const auto psi = trace_zero_psi(T, 0);
  // The sweep costs about q_K^(2a) character evaluations.
  int sweep_a = max_a;
  while (sweep_a > 0 && std::pow(static_cast<double>(T.q_K()), 2 * sweep_a) > double(1 << 20)) --sweep_a;
  if (sweep_a < max_a) {
    r.notes.push_back("unit transversal swept for a <= " + std::to_string(sweep_a) +
                      " (work bound)");
  }
  for (const auto& chi : enumerate_symplectic(T, M)) {
    const int a = chi.conductor();
    if (a < 1) continue;
    const EpsilonValue naive = epsilon_naive(chi, *psi);
    const i64 N = naive.sum.conductor();
    i64 qa = 1;
    for (int i = 0; i < a; ++i) qa *= T.q_K();
    r.record(naive.sum * naive.sum.conj() == CycNumber::from_rational(qa, 1, N),
             {"S conj(S) = q_K^a", describe(chi), describe(*psi), std::to_string(qa), "mismatch"});
    if (a > sweep_a) continue;
    const ResidueRing ring(T, ResidueRing::Field::extension, a);
    const ExtElement c = T.pi_K_power(a + psi->conductor());
    const std::string bytes = value_bytes(naive.value);
    bool invariant = true;
    for (u64 key = 0; key < ring.size(); ++key) {
      if (!ring.is_unit(key)) continue;
      const EpsilonValue eps = epsilon_with_c(chi, *psi, c * ring.ext_element(key));
      if (value_bytes(eps.value) != bytes) invariant = false;
    }
    r.record(invariant, {"eps unchanged under c -> c u over U_K / U_K^a", describe(chi),
                         describe(*psi), root_str(naive.root), "varies"});
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> suite_tags() {
  return {"conductor-spectrum", "even-sign",      "odd-sign",      "odd-sign-relaxed",
          "central-sum-pm1",    "tame-unramified", "filtration",    "factorization",
          "oracles",            "twisting",        "modulus-units"};
}

std::vector<VerifyReport> run_verification(const RunConfig& config) {
  if (!is_prime(config.p)) throw InputError("p must be prime");
  const auto known = suite_tags();
  for (const auto& s : config.suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw InputError("unknown suite '" + s + "'");
    }
  }
  auto selected = [&](const std::string& tag) {
    return config.suites.empty() ||
           std::find(config.suites.begin(), config.suites.end(), tag) != config.suites.end();
  };
  const SuiteBounds& b = config.bounds;
  const i64 p = config.p;
  const auto catalog = field_catalog(p, config.precision);
  // Character sweeps on odd p use the tame bound.
  const int M = p == 2 ? b.max_conductor : std::min(b.max_conductor, tame_cap(p));

  std::vector<std::pair<std::string, std::function<VerifyReport()>>> tasks;
  for (const auto& entry : catalog) {
    const Tower T = entry.tower;
    auto add = [&](const std::string& tag, std::function<VerifyReport()> fn) {
      if (selected(tag)) tasks.emplace_back(entry.name, std::move(fn));
    };
    add("conductor-spectrum", [T, M] { return verify_conductor_spectrum(T, M); });
    add("even-sign", [T, b] { return verify_even_sign(T, b.max_d); });
    add("odd-sign", [T, M] { return verify_odd_sign(T, M); });
    add("odd-sign-relaxed", [T, M] { return verify_odd_sign_relaxed(T, M); });
    add("central-sum-pm1", [T, M] { return check_central_sum(T, M); });
    add("filtration", [T, b] { return verify_filtration(T, b.filtration_level); });
    add("factorization", [T, M] { return verify_factorization(T, M); });
    add("oracles", [T, M, b] { return verify_oracles(T, M, b.random_characters, b.seed); });
    add("twisting", [T, M, b] { return verify_twisting(T, M, b.twist_pairs, b.seed); });
    add("modulus-units", [T, M, b] { return verify_modulus_units(T, M, b.transversal_max_a); });
  }
  if (selected("tame-unramified")) {
    tasks.emplace_back("", [p, b] { return verify_tame_unramified(p, b.max_conductor); });
  }

  std::vector<VerifyReport> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        out[i] = tasks[i].second();
        out[i].runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (!tasks[i].first.empty()) out[i].tower = tasks[i].first;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min<std::size_t>(config.parallel, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

bool all_gating_ok(const std::vector<VerifyReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerifyReport& r) { return !r.gating || r.ok(); });
}

}  // namespace epsilocal
