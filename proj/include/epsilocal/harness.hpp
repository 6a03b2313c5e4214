#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epsilocal/epsilon.hpp"

namespace epsilocal {

struct Witness {
  std::string check;
  std::string chi;
  std::string psi;
  std::string expected;
  std::string got;
};

struct VerifyReport {
  std::string theorem;
  std::string tower;
  int instances = 0;
  int passes = 0;
  std::vector<Witness> failures;
  bool vacuous = false;
  /// Why the hypotheses cannot be met, when vacuous (or when only a relaxed
  /// variant could be run).
  std::string vacuity;
  /// Claim suites fail a run; report-only suites never do.
  bool gating = true;
  /// supports | refutes | vacuous, for report-only suites.
  std::string verdict;
  /// Tables and diagnostics, one line each, in a fixed order.
  std::vector<std::string> notes;
  double runtime_ms = 0.0;

  bool ok() const { return failures.empty(); }
  void record(bool pass, Witness w);
};

/// Descriptors used in witnesses and in the CLI's JSON.
std::string describe(const Tower& tower);
std::string describe(const MultChar& chi);
std::string describe(const AddChar& psi);

struct SuiteBounds {
  /// Conductor bound M for character sweeps over Q_2.
  int max_conductor = 8;
  /// Largest d checked by the even-conductor suite.
  int max_d = 4;
  /// Number of random characters for oracle comparisons.
  int random_characters = 120;
  /// Number of (alpha, beta) pairs for the twisting identity.
  int twist_pairs = 60;
  /// Largest level for the filtration identities on wild towers.
  int filtration_level = 8;
  /// Largest a(chi) for the full unit-transversal sweep of c.
  int transversal_max_a = 4;
  u64 seed = 20240601;
};

/// d = t + 1 two ways, a(omega) = t + 1, and symplectic conductors in
/// {2t + 1} union {even n >= 2t + 2}.
VerifyReport verify_conductor_spectrum(const Tower& tower, int max_conductor);
/// eps(chi, psi) = chi(-1)^d for symplectic chi of conductor 2d, 2 <= d <= max_d,
/// and psi trivial on F of conductor 0; naive, even and Lamprecht-Tate must agree.
VerifyReport verify_even_sign(const Tower& tower, int max_d);
/// Hypothesis scan for psi trivial on F with odd conductor 2l + 1, and the
/// identity eps = chi(-1)^l G(Q) at a(chi) = 2t + 1 wherever it is satisfiable.
VerifyReport verify_odd_sign(const Tower& tower, int max_conductor);
/// The same identity for psi = pi_K^(n - d) (psi_F o Tr), n in {-1, 1, 3},
/// which drops triviality on F. Report-only, since it leaves the hypotheses.
VerifyReport verify_odd_sign_relaxed(const Tower& tower, int max_conductor);
/// Tabulates G(Q) against {+1, -1}; report-only.
VerifyReport check_central_sum(const Tower& tower, int max_conductor);
/// Sign tables for the unramified and tame towers of Q_p, with the conductor
/// bound M applied to the character sweeps.
VerifyReport verify_tame_unramified(i64 p, int max_conductor);
VerifyReport verify_filtration(const Tower& tower, int max_n);
VerifyReport verify_factorization(const Tower& tower, int max_conductor);
/// Lamprecht-Tate at every gauge level against the naive sum, on the
/// symplectic catalog and on random characters.
VerifyReport verify_oracles(const Tower& tower, int max_conductor, int random_count, u64 seed);
/// beta(c) eps(alpha, psi) = eps(alpha beta, psi) on random pairs.
VerifyReport verify_twisting(const Tower& tower, int max_conductor, int pairs, u64 seed);
/// |S|^2 = q^a on every sum, and eps unchanged under c -> c u over a full
/// transversal of units when a(chi) <= max_a.
VerifyReport verify_modulus_units(const Tower& tower, int max_conductor, int max_a);

struct RunConfig {
  i64 p = 2;
  SuiteBounds bounds;
  int parallel = 1;
  /// Empty runs everything; otherwise suite tags as listed by suite_tags().
  std::vector<std::string> suites;
  int precision = 0;
};

std::vector<std::string> suite_tags();

/// Runs every selected suite over the catalog of Q_p. Reports come back in a
/// fixed order whatever the worker count.
std::vector<VerifyReport> run_verification(const RunConfig& config);

/// True when no gating report has a failure.
bool all_gating_ok(const std::vector<VerifyReport>& reports);

}  // namespace epsilocal
