#include "epsilocal/epsilon.hpp"

#include <cstdlib>

#include "epsilocal/error.hpp"

namespace epsilocal {
namespace {

// psi(x / c) for x = c0 + c1 theta, as c0 psi(1/c) + c1 psi(theta/c).
struct ShiftedPsi {
  Angle a0, a1;
  Angle at(u64 c0, u64 c1) const {
    return a0.times(static_cast<i64>(c0)) + a1.times(static_cast<i64>(c1));
  }
};

ShiftedPsi shifted(const AddChar& psi, const ExtElement& c_inverse) {
  const Tower& T = psi.tower();
  return {psi.eval(c_inverse), psi.eval(T.theta() * c_inverse)};
}

i64 int_power(i64 base, int exp) {
  i64 out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_budget(const MultChar& chi, const AddChar& psi) {
  const Tower& T = chi.tower();
  PrecisionBudget(chi.conductor() + std::abs(psi.conductor()) + T.different_exponent() + 4,
                  "epsilon a(chi) + |n(psi)| + d + 4")
      .require(T.precision());
}

void require_ramified_char(const MultChar& chi, const AddChar& psi) {
  if (chi.over_base()) throw InputError("epsilon factors here are for characters of K^x");
  if (!(chi.tower() == psi.tower())) throw InputError("chi and psi live on different towers");
  if (chi.conductor() < 1) throw InputError("unramified chi (a = 0) is out of scope");
  require_budget(chi, psi);
}

u64 chi_key(const MultChar& chi, u64 c0, u64 c1) { return chi.quotient().ring().encode(c0, c1); }

// chi(c) S q_K^{-span/2}, lifted to the value conductor, with the modulus checks.
EpsilonValue finish(const MultChar& chi, const AddChar& psi, const Angle& prefactor, CycNumber S,
                    int span, int level, std::string formula, const ExtElement& c) {
  const Tower& T = chi.tower();
  const i64 N = value_conductor(chi, psi);
  S = S.lifted(N);
  const i64 q = T.q_K();
  const i64 q_span = int_power(q, span);
  if (!(S * S.conj() == CycNumber::from_rational(q_span, 1, N))) {
    throw InvariantError(formula + ": |S|^2 != q_K^" + std::to_string(span));
  }
  CycNumber value = (S.rotated(prefactor) * sqrt_prime_power(T.prime(), T.f() * span))
                        .scaled(1, q_span)
                        .lifted(N);
  if (!(value * value.conj() == CycNumber::from_rational(1, 1, N))) {
    throw InvariantError(formula + ": |epsilon| != 1");
  }
  EpsilonValue out;
  out.root = value.classify_root_of_unity();
  out.cls = classify(out.root);
  out.value = std::move(value);
  out.sum = std::move(S);
  out.conductor = chi.conductor();
  out.gauge_level = level;
  out.formula = std::move(formula);
  out.gauge_c = c.str();
  return out;
}

// Keys of residue representatives of O_K / P_K inside the character's ring.
std::vector<u64> residue_keys(const ResidueRing& ring) {
  std::vector<u64> out;
  const u64 p = static_cast<u64>(ring.tower().prime());
  const u64 span1 = ring.residue_degree() == 2 ? p : 1;
  for (u64 r1 = 0; r1 < span1; ++r1) {
    for (u64 r0 = 0; r0 < p; ++r0) out.push_back(ring.encode(r0, r1));
  }
  return out;
}

void check_gauge(const MultChar& chi, const AddChar& psi, const GaugeElement& g, int level,
                 const std::string& formula) {
  if (!is_gauge(chi, psi, g.c, level)) {
    throw InputError(formula + ": c = " + g.c.str() + " is not a gauge at level " +
                     std::to_string(level));
  }
}

// Sum over x in P^d / P^{d+1} of chi^{-1}(1 + x) psi(x / c), with the terms' angles.
CycNumber central_sum(const MultChar& chi, const AddChar& psi, const ExtElement& c, int d,
                      std::vector<Angle>* terms) {
  const ResidueRing& ring = chi.quotient().ring();
  const ShiftedPsi sp = shifted(psi, c.inverse());
  CycAccumulator acc(value_conductor(chi, psi));
  const u64 pd = ring.uniformizer_basis(d, 0);
  for (u64 eps : residue_keys(ring)) {
    const u64 x = ring.mul(pd, eps);
    const Angle term = -chi.eval_unit_key(ring.add(ring.one(), x)) +
                       sp.at(ring.coord0(x), ring.coord1(x));
    acc.add(term);
    if (terms) terms->push_back(term);
  }
  return acc.value();
}

}  // namespace

std::string to_string(ValueClass cls) {
  switch (cls) {
    case ValueClass::plus_one:
      return "plus_one";
    case ValueClass::minus_one:
      return "minus_one";
    case ValueClass::eighth_root:
      return "eighth_root";
    case ValueClass::other:
      return "other";
  }
  return "other";
}

ValueClass classify(const std::optional<Angle>& root) {
  if (!root) return ValueClass::other;
  if (root->is_zero()) return ValueClass::plus_one;
  if (*root == Angle(1, 2)) return ValueClass::minus_one;
  if (8 % root->order() == 0) return ValueClass::eighth_root;
  return ValueClass::other;
}

i64 value_conductor(const MultChar& chi, const AddChar& /*psi*/) {
  const Tower& T = chi.tower();
  const int depth = (chi.conductor() + T.e() - 1) / T.e();
  i64 n = lcm_i64(sqrt_conductor(T.prime()), chi.value_order());
  return lcm_i64(n, static_cast<i64>(prime_power(T.prime(), depth)));
}

EpsilonValue epsilon_with_c(const MultChar& chi, const AddChar& psi, const ExtElement& c) {
  require_ramified_char(chi, psi);
  const Tower& T = chi.tower();
  const int a = chi.conductor();
  if (T.valuation_K(c) != a + psi.conductor()) {
    throw InputError("c must have valuation a(chi) + n(psi) = " +
                     std::to_string(a + psi.conductor()));
  }
  const ResidueRing ring(T, ResidueRing::Field::extension, a);
  const ShiftedPsi sp = shifted(psi, c.inverse());
  CycAccumulator acc(value_conductor(chi, psi));
  for (u64 key = 0; key < ring.size(); ++key) {
    if (!ring.is_unit(key)) continue;
    const u64 c0 = ring.coord0(key), c1 = ring.coord1(key);
    acc.add(-chi.eval_unit_key(chi_key(chi, c0, c1)) + sp.at(c0, c1));
  }
  return finish(chi, psi, chi.eval(c), acc.value(), a, 0, "naive", c);
}

EpsilonValue epsilon_naive(const MultChar& chi, const AddChar& psi) {
  require_ramified_char(chi, psi);
  return epsilon_with_c(chi, psi, chi.tower().pi_K_power(chi.conductor() + psi.conductor()));
}

bool is_gauge(const MultChar& chi, const AddChar& psi, const ExtElement& c, int level) {
  const Tower& T = chi.tower();
  const int a = chi.conductor();
  if (level < 0 || 2 * level > a) throw InputError("gauge level must satisfy 0 <= 2m <= a(chi)");
  if (T.valuation_K(c) != a + psi.conductor()) return false;
  if (level == 0) return true;
  const ExtElement c_inv = c.inverse();
  const ExtElement one = T.one();
  for (int j = a - level; j < a; ++j) {
    const ExtElement pj = T.pi_K_power(j);
    for (int i = 0; i < T.f(); ++i) {
      const ExtElement y = i == 0 ? pj : pj * T.theta();
      if (!(chi.eval(one + y) == psi.eval(y * c_inv))) return false;
    }
  }
  return true;
}

GaugeElement solve_gauge(const MultChar& chi, const AddChar& psi, int level) {
  require_ramified_char(chi, psi);
  const Tower& T = chi.tower();
  const int v = chi.conductor() + psi.conductor();
  const ExtElement base = T.pi_K_power(v);
  if (level == 0) return {base, v, 0, 1};
  const ResidueRing ring(T, ResidueRing::Field::extension, level);
  for (u64 key = 0; key < ring.size(); ++key) {
    if (!ring.is_unit(key)) continue;
    const ExtElement c = base * ring.ext_element(key);
    if (is_gauge(chi, psi, c, level)) return {c, v, level, key};
  }
  throw VerificationFailure("no gauge element exists at level " + std::to_string(level) +
                            " (a = " + std::to_string(chi.conductor()) +
                            ", n(psi) = " + std::to_string(psi.conductor()) + ")");
}

EpsilonValue epsilon_lamprecht(const MultChar& chi, const AddChar& psi,
                               const GaugeElement& gauge) {
  require_ramified_char(chi, psi);
  const int a = chi.conductor();
  const int m = gauge.level;
  check_gauge(chi, psi, gauge, m, "lamprecht");
  const Tower& T = chi.tower();
  const ResidueRing ring(T, ResidueRing::Field::extension, a - m);
  const ShiftedPsi sp = shifted(psi, gauge.c.inverse());
  CycAccumulator acc(value_conductor(chi, psi));
  for (u64 key = 0; key < ring.size(); ++key) {
    if (!ring.is_unit(key) || !ring.in_unit_level(key, m)) continue;
    const u64 c0 = ring.coord0(key), c1 = ring.coord1(key);
    acc.add(-chi.eval_unit_key(chi_key(chi, c0, c1)) + sp.at(c0, c1));
  }
  return finish(chi, psi, chi.eval(gauge.c), acc.value(), a - 2 * m, m, "lamprecht", gauge.c);
}

EpsilonValue epsilon_even(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge) {
  require_ramified_char(chi, psi);
  const int a = chi.conductor();
  if (a % 2 != 0) throw InputError("epsilon_even needs an even conductor");
  check_gauge(chi, psi, gauge, a / 2, "even");
  const Angle prefactor = chi.eval(gauge.c) + psi.eval(gauge.c.inverse());
  return finish(chi, psi, prefactor, CycNumber::from_rational(1, 1), 0, a / 2, "even", gauge.c);
}

EpsilonValue epsilon_odd(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge) {
  require_ramified_char(chi, psi);
  const int a = chi.conductor();
  if (a % 2 != 1 || a < 3) throw InputError("epsilon_odd needs an odd conductor >= 3");
  const int d = a / 2;
  check_gauge(chi, psi, gauge, d, "odd");
  const Angle prefactor = chi.eval(gauge.c) + psi.eval(gauge.c.inverse());
  return finish(chi, psi, prefactor, central_sum(chi, psi, gauge.c, d, nullptr), 1, d, "odd",
                gauge.c);
}

CentralSum g_of_q(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge) {
  require_ramified_char(chi, psi);
  const Tower& T = chi.tower();
  const int t = T.ramification_break();
  if (t < 1 || chi.conductor() != 2 * t + 1) {
    throw InputError("G(Q) needs a wild tower and a(chi) = 2t + 1");
  }
  check_gauge(chi, psi, gauge, t, "g_of_q");
  const i64 N = value_conductor(chi, psi);
  CentralSum out;
  const CycNumber S = central_sum(chi, psi, gauge.c, t, &out.q_bar).lifted(N);
  out.G = (S * sqrt_prime_power(T.prime(), T.f())).scaled(1, T.q_K()).lifted(N);
  out.G_root = out.G.classify_root_of_unity();
  out.gamma2 = out.G * out.G;
  out.gamma4 = out.gamma2 * out.gamma2;
  out.gamma4_matches = out.gamma4 == CycNumber::from_rational(T.f() % 2 == 0 ? 1 : -1, 1, N);

  const ResidueRing& ring = chi.quotient().ring();
  const ShiftedPsi sp = shifted(psi, gauge.c.inverse());
  const u64 p2t = ring.uniformizer_basis(2 * t, 0);
  const std::vector<u64> reps = residue_keys(ring);
  for (u64 eps : reps) {
    const u64 x = ring.mul(p2t, eps);
    out.tau.push_back(sp.at(ring.coord0(x), ring.coord1(x)));
  }
  if (T.prime() == 2) {
    // kappa_F^x = {1}, so c'(tau) = 1 is the only candidate.
    const ResidueRing k1(T, ResidueRing::Field::extension, 1);
    bool holds = true;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const u64 y = k1.reduce_from(ring, reps[i]);
      u64 tr = y, frob = y;
      for (int j = 1; j < T.f(); ++j) {
        frob = k1.mul(frob, frob);
        tr = k1.add(tr, frob);
      }
      if (k1.coord1(tr) != 0) throw InvariantError("residue trace left F_2");
      if (!(out.tau[i] == Angle(static_cast<i64>(k1.coord0(tr)), 2))) holds = false;
    }
    if (holds) {
      out.c_tau = 1;
      const Angle q_at_c = out.q_bar[1];
      out.gamma2_matches = out.gamma2 == CycNumber::root_of_unity(q_at_c, N);
    }
  }
  return out;
}

EpsilonValue deligne_twist(const MultChar& alpha, const MultChar& beta, const AddChar& psi,
                           const GaugeElement& gauge) {
  require_ramified_char(alpha, psi);
  if (alpha.conductor() < 2 * beta.conductor()) {
    throw InputError("Deligne twisting needs a(alpha) >= 2 a(beta)");
  }
  check_gauge(alpha, psi, gauge, alpha.conductor() / 2, "deligne");
  EpsilonValue base = epsilon_naive(alpha, psi);
  const i64 N = lcm_i64(base.value.conductor(), beta.value_order());
  base.value = base.value.rotated(beta.eval(gauge.c)).lifted(N);
  base.root = base.value.classify_root_of_unity();
  base.cls = classify(base.root);
  base.formula = "deligne";
  base.gauge_level = gauge.level;
  base.gauge_c = gauge.c.str();
  return base;
}

}  // namespace epsilocal
