// The `angles` command-line front end. Kept in a header so tests can drive
// run_cli directly with string streams.

#ifndef CSTAR_CLI_HPP_
#define CSTAR_CLI_HPP_

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cstar/groups.hpp"
#include "cstar/io.hpp"
#include "cstar/m2.hpp"
#include "cstar/verify.hpp"

namespace cstar::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kDomainError = 2,
  kUsage = 64,
  kIoError = 73,
};

struct NamedValue {
  std::string name;
  double cos_value = 0.0;
  double angle_rad = 0.0;
  std::string route;
  std::string exact;  // exact cosine when one is known, e.g. "1/2"
};

struct Report {
  std::string command;
  io::json inputs = io::json::object();
  std::vector<NamedValue> results;
  VerificationReport checks;
  io::json extra = io::json::object();
  long long timing_ms = 0;
};

inline std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string fmt_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline io::json to_json(const Report& r) {
  io::json results = io::json::array();
  for (const NamedValue& v : r.results) {
    io::json item{{"name", v.name},
                  {"cos", v.cos_value},
                  {"angle_rad", v.angle_rad},
                  {"angle_deg", v.angle_rad * 180.0 / std::numbers::pi},
                  {"route", v.route}};
    if (!v.exact.empty())
      item["cos_exact"] = v.exact;
    results.push_back(std::move(item));
  }
  io::json out{{"schema", io::kSchema},
               {"command", r.command},
               {"inputs", r.inputs},
               {"results", std::move(results)},
               {"checks", io::checks_to_json(r.checks)},
               {"timing_ms", r.timing_ms}};
  for (const auto& [key, value] : r.extra.items())
    out[key] = value;
  return out;
}

inline void print_text(const Report& r, std::ostream& out, bool timing) {
  out << "command: " << r.command << '\n';
  if (!r.inputs.empty())
    out << "inputs: " << r.inputs.dump() << '\n';
  for (const NamedValue& v : r.results) {
    out << "  " << v.name << " [" << v.route << "]  cos " << fmt12(v.cos_value);
    if (!v.exact.empty())
      out << " (" << v.exact << ")";
    out << "  angle " << fmt12(v.angle_rad) << " rad = " << fmt12(v.angle_rad * 180.0 / std::numbers::pi)
        << " deg\n";
  }
  for (const auto& [key, value] : r.extra.items())
    out << key << ": " << (value.is_number_float() ? fmt12(value.get<double>()) : value.dump()) << '\n';
  for (const Check& c : r.checks.checks)
    out << c.name << ": " << (c.pass ? "pass" : "FAIL") << " (residual " << fmt_residual(c.residual) << ")\n";
  if (timing)
    out << "time: " << r.timing_ms << " ms\n";
}

inline NamedValue named(std::string name, const AngleResult& a) {
  return {std::move(name), a.cos_value, a.angle_rad, to_string(a.route), {}};
}

inline std::uint64_t seed_from_env() {
  const char* s = std::getenv("ANGLES_SEED");
  if (!s || !*s)
    return kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size())
      throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, std::string("ANGLES_SEED must be a non-negative integer, got '") + s + "'");
  }
}

// Residual threshold for the cross-route checks the CLI reports.
inline constexpr double kRouteTol = 1e-7;

inline Report cmd_m2_angle(const std::vector<double>& u_parts, std::optional<double> rotation) {
  Report r;
  r.command = "m2-angle";
  m2::Unitary2 u;
  if (rotation) {
    r.inputs["rotation"] = *rotation;
    u = m2::Unitary2::rotation(*rotation);
  } else {
    r.inputs["u"] = u_parts;
    CMatrix m(2, 2);
    for (int k = 0; k < 4; ++k)
      m(k / 2, k % 2) = Complex(u_parts[2 * k], u_parts[2 * k + 1]);
    u = m2::Unitary2::from_matrix(m, 1e-9);
  }
  const m2::Workspace ws;
  const m2::ThreeRoutes routes = m2::three_routes(ws, u);
  const double closed_cos = m2::closed_form_cos(u);
  r.results.push_back({"closed_form", closed_cos, routes.closed_form, "closed-form", {}});
  r.results.push_back(named("formula", routes.formula));
  r.results.push_back(named("definition", routes.definition));
  r.checks.add("closed_form_vs_formula", std::abs(closed_cos - routes.formula.cos_value), kRouteTol);
  r.checks.add("closed_form_vs_definition", std::abs(closed_cos - routes.definition.cos_value), kRouteTol);
  r.checks.add("formula_vs_definition", std::abs(routes.formula.cos_value - routes.definition.cos_value), kRouteTol);
  r.extra["hadamard"] = u.is_hadamard();
  return r;
}

/// Rotations theta in [0, pi/4] cover every angle in [0, pi/2]. Each point is
/// computed by the closed form and checked against the quasi-basis formula.
inline Report cmd_m2_sweep(int points, const std::optional<std::string>& csv_path) {
  Report r;
  r.command = "m2-sweep";
  r.inputs["points"] = points;
  if (csv_path)
    r.inputs["out"] = *csv_path;
  const std::vector<m2::SweepPoint> sweep = m2::angle_sweep(m2::uniform_grid(points));
  const m2::Inclusion inc = m2::canonical_inclusion();
  double worst = 0.0;
  for (const m2::SweepPoint& p : sweep) {
    const ExpectationPtr Fu = m2::conjugated_diagonal(inc, m2::Unitary2::rotation(p.theta));
    worst = std::max(worst, std::abs(interior_angle_formula_from(*inc.E, *inc.F, *Fu).cos_value - p.cos_value));
  }
  r.checks.add("closed_form_vs_formula", worst, kRouteTol);
  r.checks.add("start_at_zero", std::abs(sweep.front().angle_rad), 1e-9);
  r.checks.add("end_at_right_angle", std::abs(sweep.back().angle_rad - std::numbers::pi / 2), 1e-9);
  r.extra["max_gap"] = m2::max_gap(sweep);
  r.results.push_back({"first", sweep.front().cos_value, sweep.front().angle_rad, "closed-form", {}});
  r.results.push_back({"last", sweep.back().cos_value, sweep.back().angle_rad, "closed-form", {}});
  if (csv_path) {
    std::ofstream csv(*csv_path, std::ios::binary);
    if (!csv)
      throw std::ios_base::failure("cannot open '" + *csv_path + "' for writing");
    char line[96];
    csv << "theta,cos,angle_rad\r\n";
    for (const m2::SweepPoint& p : sweep) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\r\n", p.theta, p.cos_value, p.angle_rad);
      csv << line;
    }
    csv.flush();
    if (!csv)
      throw std::ios_base::failure("write to '" + *csv_path + "' failed");
  }
  return r;
}

inline std::string rational_string(const groups::Rational& q) {
  if (q.denominator() == 1)
    return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline Report cmd_group_angle(const std::string& spec, const std::string& h, const std::string& k,
                              const std::string& l, bool numeric) {
  Report r;
  r.command = "group-angle";
  r.inputs = {{"group", spec}, {"H", h}, {"K", k}, {"L", l}, {"numeric", numeric}};
  const groups::FiniteGroup G = groups::FiniteGroup::parse(spec);
  const groups::Subgroup H = groups::parse_subgroup(G, h);
  const groups::Subgroup K = groups::parse_subgroup(G, k);
  const groups::Subgroup L = groups::parse_subgroup(G, l);
  const groups::GroupAngle a = groups::group_angle(G, H, K, L);
  NamedValue exact = named("formula", a.result);
  exact.exact = a.cos_exact ? rational_string(*a.cos_exact) : "sqrt(" + rational_string(a.cos_squared) + ")";
  r.results.push_back(exact);
  r.extra["order"] = G.order();
  r.extra["cos_squared"] = rational_string(a.cos_squared);
  r.extra["index_K_H"] = a.index_k;
  r.extra["index_L_H"] = a.index_l;
  r.extra["index_meet_H"] = a.index_meet;
  if (numeric) {
    const groups::RegularRoute route(G, H);
    const AngleResult def = route.angle(K, L);
    r.results.push_back(named("definition", def));
    r.checks.add("formula_vs_definition", std::abs(def.cos_value - a.result.cos_value), kRouteTol);
  }
  return r;
}

inline Report cmd_verify(const std::string& suite, std::uint64_t seed) {
  Report r;
  r.command = "verify";
  r.inputs["suite"] = suite;
  if (suite.empty())
    fail(ErrorCode::ParseError, "suite name must not be empty");
  r.checks = run_suite(suite, seed);
  return r;
}

/// Parses argv, runs one subcommand and writes its report. Returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Angles between intermediate subalgebras of finite-index inclusions"};
  app.name("angles");
  app.require_subcommand(1, 1);
  bool json = false;
  bool no_timing = false;
  app.add_flag("--json", json, "Emit a JSON report instead of text");
  app.add_flag("--no-timing", no_timing, "Report timing_ms as 0 so output is reproducible");

  auto* m2_angle = app.add_subcommand("m2-angle", "Angle between the diagonal and its conjugate by u in M_2");
  std::vector<double> u_parts;
  double rotation = 0.0;
  auto* opt_u = m2_angle->add_option("--u", u_parts, "re/im of u11 u12 u21 u22")->expected(8);
  auto* opt_rot = m2_angle->add_option("--rotation", rotation, "use the real rotation by this angle");
  opt_u->excludes(opt_rot);
  m2_angle->require_option(1);

  auto* m2_sweep = app.add_subcommand("m2-sweep", "Angles along the rotation family, written as CSV");
  int points = 1000;
  std::string csv_path;
  m2_sweep->add_option("--points", points, "number of grid points (>= 2)")->capture_default_str();
  auto* opt_out = m2_sweep->add_option("--out", csv_path, "CSV output path");

  auto* group = app.add_subcommand("group-angle", "Angle between C[K] and C[L] over C[H] in C[G]");
  std::string spec, h, k, l;
  bool numeric = false;
  group->add_option("--group", spec, "Z12, Z3xZ3xZ5xZ5, S4, ...")->required();
  group->add_option("--H", h, "generators of H (default: trivial)");
  group->add_option("--K", k, "generators of K")->required();
  group->add_option("--L", l, "generators of L")->required();
  group->add_flag("--numeric", numeric, "also compute the angle from the Jones projections");

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  std::string suite;
  verify->add_option("--suite", suite, "algebra|tower|angles|m2|groups|all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "angles: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const std::uint64_t seed = seed_from_env();
    const auto start = std::chrono::steady_clock::now();
    Report report;
    if (*m2_angle)
      report = cmd_m2_angle(u_parts, *opt_rot ? std::optional<double>(rotation) : std::nullopt);
    else if (*m2_sweep)
      report = cmd_m2_sweep(points, *opt_out ? std::optional<std::string>(csv_path) : std::nullopt);
    else if (*group)
      report = cmd_group_angle(spec, h, k, l, numeric);
    else
      report = cmd_verify(suite, seed);
    if (*verify)
      report.inputs["seed"] = seed;
    if (!no_timing)
      report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start).count();
    if (json)
      out << to_json(report).dump(2) << '\n';
    else
      print_text(report, out, !no_timing);
    return report.checks.passed() ? kOk : kVerifyFailed;
  } catch (const Error& e) {
    err << "angles: " << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kUsage : kDomainError;
  } catch (const std::ios_base::failure& e) {
    err << "angles: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace cstar::cli

#endif  // CSTAR_CLI_HPP_
