#include "epsilocal/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "epsilocal/error.hpp"
#include "epsilocal/harness.hpp"
#include "epsilocal/serialize.hpp"

namespace epsilocal {
namespace {

struct Options {
  i64 p = 2;
  std::string field;
  std::string chi;
  int psi_level = 0;
  int max_conductor = 8;
  std::string formula = "auto";
  std::string out_path;
  std::string format = "json";
  int parallel = 1;
  int precision = 0;
  std::vector<std::string> suites;
  bool timing = false;
};

// --precision wins over EPSILOCAL_PRECISION; 0 means the per-prime default.
int effective_precision(const Options& o) {
  if (o.precision > 0) return o.precision;
  if (const char* env = std::getenv("EPSILOCAL_PRECISION"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1000) {
      throw InputError(std::string("EPSILOCAL_PRECISION must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  return 0;
}

// Inline JSON, a path to a JSON file, or (for fields) a catalog name such as Q2(sqrt-1).
Json load_descriptor(const std::string& text, const char* what) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\n");
  if (first == std::string::npos) throw InputError(std::string("empty ") + what + " descriptor");
  if (text[first] != '{' && std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Tower load_field(const Options& o, int precision) {
  if (o.field.empty()) throw InputError("--field is required");
  if (o.field.rfind("Q", 0) == 0 && o.field.find('(') != std::string::npos) {
    const auto open = o.field.find('(');
    i64 p = 0;
    try {
      p = std::stoll(o.field.substr(1, open - 1));
    } catch (const std::exception&) {
      throw InputError("unknown field '" + o.field + "'");
    }
    if (!is_prime(p)) throw InputError("unknown field '" + o.field + "'");
    for (auto& entry : field_catalog(p, precision)) {
      if (entry.name == o.field) return entry.tower;
    }
    throw InputError("unknown field '" + o.field + "'");
  }
  return tower_from_json(load_descriptor(o.field, "field"), precision);
}

AddChar default_psi(const Tower& T, int n) {
  if (auto psi = trace_zero_psi(T, n)) return *psi;
  return uniformizer_psi(T, n);
}

EpsilonValue compute(const MultChar& chi, const AddChar& psi, const std::string& formula) {
  const int a = chi.conductor();
  if (formula == "naive" || (formula == "auto" && a < 2)) return epsilon_naive(chi, psi);
  return epsilon_lamprecht(chi, psi, solve_gauge(chi, psi, a / 2));
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out_path);
  f << text;
}

int cmd_list_fields(const Options& o, std::ostream& out) {
  out << catalog_to_json(o.p, effective_precision(o)).dump(2) << '\n';
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Tower T = load_field(o, effective_precision(o));
  Json arr = Json::array();
  for (const auto& chi : enumerate_symplectic(T, o.max_conductor)) {
    Json j = char_to_json(chi);
    j["conductor"] = chi.conductor();
    arr.push_back(std::move(j));
  }
  Json doc{{"field", tower_to_json(T)}, {"max_conductor", o.max_conductor}, {"characters", std::move(arr)}};
  write_output(o, doc.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_epsilon(const Options& o, std::ostream& out) {
  const Tower T = load_field(o, effective_precision(o));
  if (o.chi.empty()) throw InputError("--char is required");
  const MultChar chi = char_from_json(load_descriptor(o.chi, "character"), T);
  const AddChar psi = default_psi(T, o.psi_level);
  const EpsilonValue eps = compute(chi, psi, o.formula);
  Json doc = epsilon_to_json(chi, psi, eps);
  doc["conductor"] = eps.conductor;
  write_output(o, doc.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.p = o.p;
  cfg.bounds.max_conductor = o.max_conductor;
  cfg.parallel = o.parallel;
  cfg.suites = o.suites;
  cfg.precision = effective_precision(o);
  const auto reports = run_verification(cfg);
  const std::string body = o.format == "csv" ? reports_to_csv(reports)
                                             : reports_to_json(reports, o.timing).dump(2) + "\n";
  write_output(o, body, out);

  std::ostream& summary = o.out_path.empty() ? err : out;
  int fails = 0;
  for (const auto& r : reports) {
    if (r.vacuous && r.instances == 0) continue;
    summary << (r.ok() ? "ok   " : (r.gating ? "FAIL " : "note ")) << r.tower << ' ' << r.theorem
            << ": " << r.passes << '/' << r.instances;
    if (!r.verdict.empty()) summary << " (" << r.verdict << ')';
    summary << '\n';
    if (r.gating && !r.ok()) ++fails;
  }
  summary << reports.size() << " reports, " << fails << " failing\n";
  return all_gating_ok(reports) ? kExitOk : kExitTheoremFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact local epsilon factors for quadratic extensions of Q_p"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-fields", "Quadratic extensions of Q_p up to isomorphism");
  list->add_option("--p", o.p, "Residue characteristic")->required();
  list->add_option("--precision", o.precision, "p-adic digits")->check(CLI::NonNegativeNumber);

  auto* enumerate = app.add_subcommand("enumerate-symplectic", "Characters trivial on F^x times the Galois twist");
  enumerate->add_option("--field", o.field, "Catalog name, JSON descriptor or file")->required();
  enumerate->add_option("--max-conductor", o.max_conductor, "Conductor bound M")->check(CLI::PositiveNumber);
  enumerate->add_option("--out", o.out_path, "Output file");
  enumerate->add_option("--precision", o.precision, "p-adic digits")->check(CLI::NonNegativeNumber);

  auto* epsilon = app.add_subcommand("epsilon", "One epsilon factor");
  epsilon->add_option("--field", o.field, "Catalog name, JSON descriptor or file")->required();
  epsilon->add_option("--char", o.chi, "Character JSON or file")->required();
  epsilon->add_option("--psi-level", o.psi_level, "Conductor n(psi)");
  epsilon->add_option("--formula", o.formula, "naive, lamprecht or auto")
      ->check(CLI::IsMember({"naive", "lamprecht", "auto"}));
  epsilon->add_option("--out", o.out_path, "Output file");
  epsilon->add_option("--precision", o.precision, "p-adic digits")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run the verification suites over the catalog of Q_p");
  verify->add_option("--p", o.p, "Residue characteristic");
  verify->add_option("--max-conductor", o.max_conductor, "Conductor bound M")->check(CLI::PositiveNumber);
  verify->add_option("--out", o.out_path, "Report file");
  verify->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--parallel", o.parallel, "Worker threads")->check(CLI::Range(1, 256));
  verify->add_option("--precision", o.precision, "p-adic digits")->check(CLI::NonNegativeNumber);
  verify->add_option("--suite", o.suites, "Restrict to these suites");
  verify->add_flag("--timing", o.timing, "Include runtime_ms in JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*list) return cmd_list_fields(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*epsilon) return cmd_epsilon(o, out);
    return cmd_verify(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariantError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariantError;
  }
}

}  // namespace epsilocal
