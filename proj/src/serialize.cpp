#include "epsilocal/serialize.hpp"

#include <cmath>
#include <sstream>

#include "epsilocal/error.hpp"
#include "epsilocal/harness.hpp"

namespace epsilocal {
namespace {

double rounded(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

Json rational_to_json(const Rational& r) {
  if (r.den == 1) return r.num;
  return r.str();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational{j.get<i64>(), 1};
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InputError("polynomial coefficient must be an integer or a \"num/den\" string");
}

template <class T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Json tower_to_json(const Tower& tower) {
  return Json{{"p", tower.prime()},
              {"poly", Json::array({rational_to_json(tower.a1()), rational_to_json(tower.a0())})}};
}

Tower tower_from_json(const Json& j, int precision) {
  const i64 p = required<i64>(j, "p");
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  const Json& poly = j.at("poly");
  if (!poly.is_array() || poly.size() != 2) throw InputError("poly must be [a1, a0]");
  return Tower::make(p, rational_from_json(poly[0]), rational_from_json(poly[1]), precision);
}

Json cyc_to_json(const CycNumber& x) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < x.numerators().size(); ++i) coeffs.push_back(x.coefficient_string(i));
  const auto z = x.to_complex();
  return Json{{"n", x.conductor()},
              {"coeffs", std::move(coeffs)},
              {"approx", Json::array({rounded(z.real()), rounded(z.imag())})}};
}

Json char_to_json(const MultChar& chi) {
  return Json{{"level", chi.level()},
              {"pi_value", chi.pi_value().str()},
              {"unit_exponents", chi.unit_exponents()}};
}

MultChar char_from_json(const Json& j, const Tower& tower) {
  const int level = required<int>(j, "level");
  if (level < 1) throw InputError("character level must be >= 1");
  const Angle pi = Angle::parse(required<std::string>(j, "pi_value"));
  const auto exps = required<std::vector<i64>>(j, "unit_exponents");
  PrecisionBudget(level + 4, "character level + 4").require(tower.precision());
  auto quotient = unit_quotient(tower, ResidueRing::Field::extension, level);
  if (exps.size() != quotient->orders().size()) {
    throw InputError("unit_exponents needs " + std::to_string(quotient->orders().size()) +
                     " entries at level " + std::to_string(level));
  }
  return MultChar::from_exponents(std::move(quotient), pi, exps);
}

Json psi_to_json(const AddChar& psi) {
  const ExtElement& c = psi.twist();
  return Json{{"c", c.str()}, {"n_F", psi.base_conductor()}, {"conductor", psi.conductor()},
              {"trivial_on_F", psi.trivial_on_F()}};
}

Json epsilon_to_json(const MultChar& chi, const AddChar& psi, const EpsilonValue& eps) {
  return Json{{"char", char_to_json(chi)},
              {"psi", psi_to_json(psi)},
              {"formula", eps.formula},
              {"gauge_c", eps.gauge_c},
              {"value", cyc_to_json(eps.value)},
              {"class", to_string(eps.cls)}};
}

Json report_to_json(const VerifyReport& r, bool with_timing) {
  Json failures = Json::array();
  for (const auto& w : r.failures) {
    failures.push_back(Json{{"check", w.check},
                            {"char", w.chi},
                            {"psi", w.psi},
                            {"expected", w.expected},
                            {"got", w.got}});
  }
  Json out{{"theorem", r.theorem},     {"tower", r.tower},         {"instances", r.instances},
           {"passes", r.passes},       {"fails", r.failures.size()}, {"vacuous", r.vacuous},
           {"vacuity", r.vacuity},     {"gating", r.gating},       {"verdict", r.verdict},
           {"notes", r.notes},         {"failures", std::move(failures)}};
  if (with_timing) out["runtime_ms"] = r.runtime_ms;
  return out;
}

Json reports_to_json(const std::vector<VerifyReport>& reports, bool with_timing) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(report_to_json(r, with_timing));
  return out;
}

std::string reports_to_csv(const std::vector<VerifyReport>& reports) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::ostringstream os;
  os << "tower,theorem,instances,passes,fails,vacuous\n";
  for (const auto& r : reports) {
    os << field(r.tower) << ',' << field(r.theorem) << ',' << r.instances << ',' << r.passes << ','
       << r.failures.size() << ',' << (r.vacuous ? "true" : "false") << '\n';
  }
  return os.str();
}

Json catalog_to_json(i64 p, int precision) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  Json out = Json::array();
  for (const auto& entry : field_catalog(p, precision)) {
    const Tower& T = entry.tower;
    Json j = tower_to_json(T);
    j["name"] = entry.name;
    j["e"] = T.e();
    j["f"] = T.f();
    j["d"] = T.different_exponent();
    j["t"] = T.ramified() ? Json(T.ramification_break()) : Json(nullptr);
    j["class"] = to_string(T.kind());
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace epsilocal
