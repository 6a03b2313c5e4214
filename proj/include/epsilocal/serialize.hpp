#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "epsilocal/epsilon.hpp"

namespace epsilocal {

struct VerifyReport;

using Json = nlohmann::ordered_json;

/// {"p": 2, "poly": [a1, a0]} for x^2 + a1 x + a0; coefficients are integers
/// or "num/den" strings.
Json tower_to_json(const Tower& tower);
Tower tower_from_json(const Json& j, int precision = 0);

/// {"n": conductor, "coeffs": ["num/den", ...], "approx": [re, im]}.
/// The coefficients are authoritative; approx is rounded to 12 places.
Json cyc_to_json(const CycNumber& x);

/// {"level": m, "pi_value": "k/n", "unit_exponents": [...]}, with exponents
/// relative to the generators of U_K / U_K^m.
Json char_to_json(const MultChar& chi);
MultChar char_from_json(const Json& j, const Tower& tower);

Json psi_to_json(const AddChar& psi);

/// {"char", "psi", "formula", "gauge_c", "value", "class"}.
Json epsilon_to_json(const MultChar& chi, const AddChar& psi, const EpsilonValue& eps);

Json report_to_json(const VerifyReport& report, bool with_timing);
Json reports_to_json(const std::vector<VerifyReport>& reports, bool with_timing);
/// tower,theorem,instances,passes,fails,vacuous with a header row.
std::string reports_to_csv(const std::vector<VerifyReport>& reports);

/// One entry per catalog tower with e, f, d, t and a class tag.
Json catalog_to_json(i64 p, int precision = 0);

}  // namespace epsilocal
