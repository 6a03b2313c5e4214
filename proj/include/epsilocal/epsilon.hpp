#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsilocal/characters.hpp"
#include "epsilocal/cyclotomic.hpp"

namespace epsilocal {

enum class ValueClass { plus_one, minus_one, eighth_root, other };
std::string to_string(ValueClass cls);
ValueClass classify(const std::optional<Angle>& root);

struct EpsilonValue {
  CycNumber value;
  ValueClass cls = ValueClass::other;
  /// Set when value is a root of unity.
  std::optional<Angle> root;
  /// The unnormalized character sum; S * conj(S) = q_K^(a - 2m).
  CycNumber sum;
  int conductor = 0;
  int gauge_level = 0;
  std::string formula;
  std::string gauge_c;
};

/// c with v_K(c) = a(chi) + n(psi) and chi(1 + y) = psi(y / c) on P_K^{a - level}.
struct GaugeElement {
  ExtElement c;
  int valuation = 0;
  int level = 0;
  /// Key of the unit part c / pi_K^valuation in O_K / P_K^level (1 when level = 0).
  u64 unit_key = 1;
};

/// The conductor n with every epsilon value of (chi, psi) in Q(zeta_n): built
/// from sqrt(p), the values of chi and the depth p^ceil(a/e) of psi(x/c).
i64 value_conductor(const MultChar& chi, const AddChar& psi);

/// Gauss-sum definition with c = pi_K^{a + n(psi)}.
EpsilonValue epsilon_naive(const MultChar& chi, const AddChar& psi);
/// The same sum for an arbitrary c of valuation a + n(psi).
EpsilonValue epsilon_with_c(const MultChar& chi, const AddChar& psi, const ExtElement& c);

bool is_gauge(const MultChar& chi, const AddChar& psi, const ExtElement& c, int level);
/// Exhaustive search over unit parts in O_K / P_K^level, least key first.
GaugeElement solve_gauge(const MultChar& chi, const AddChar& psi, int level);

/// Sum over U^m / U^{a - m} for the gauge's level m.
EpsilonValue epsilon_lamprecht(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge);
/// chi(c) psi(1/c) for a = 2d, gauge at level d.
EpsilonValue epsilon_even(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge);
/// chi(c) psi(1/c) times the normalized sum over P^d / P^{d+1}, for a = 2d + 1.
EpsilonValue epsilon_odd(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge);

/// The central quadratic sum at a = 2t + 1 and what can be read off it.
struct CentralSum {
  CycNumber G;
  std::optional<Angle> G_root;
  /// Qbar(eps) = Q(pi_K^t eps) for eps over residue representatives, in key order.
  std::vector<Angle> q_bar;
  CycNumber gamma2;
  CycNumber gamma4;
  /// gamma^4 = (-1)^{[kappa_K : F_2]}.
  bool gamma4_matches = false;
  /// tau(eps) = psi(pi_K^{2t} eps / c').
  std::vector<Angle> tau;
  /// Residue of c'(tau) in kappa_F^x, when tau(eps) = (-1)^{Tr(eps / c'^2)} is solvable.
  std::optional<u64> c_tau;
  /// gamma^2 = Qbar(c'(tau)); false when c_tau is absent.
  bool gamma2_matches = false;
};

CentralSum g_of_q(const MultChar& chi, const AddChar& psi, const GaugeElement& gauge);

/// beta(c) * epsilon(alpha, psi) with c gauging alpha at level floor(a(alpha)/2).
EpsilonValue deligne_twist(const MultChar& alpha, const MultChar& beta, const AddChar& psi,
                           const GaugeElement& gauge);

}  // namespace epsilocal
