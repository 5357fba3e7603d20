// Command-line front end: solve, example, bounds, verify, check.
//
// Exit codes: 0 pass, 1 verification failure, 2 invalid input,
// 3 geometric obstruction.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bjorling/bjorling.hpp"
#include "bjorling/extremals.hpp"
#include "bjorling/io.hpp"
#include "bjorling/surface.hpp"
#include "bjorling/verify.hpp"

namespace {

using namespace bjorling;
using io::json;

constexpr int kPass = 0;
constexpr int kVerifyFail = 1;
constexpr int kInvalid = 2;
constexpr int kObstruction = 3;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::compatibility:
    case ErrorKind::move_contour:
    case ErrorKind::branch_obstruction:
    case ErrorKind::non_liftable:
      return kObstruction;
    default:
      return kInvalid;
  }
}

int report_error(const Error& e) {
  std::cerr << "error: " << to_string(e.kind()) << ": " << e.what();
  if (std::isfinite(e.value())) std::cerr << " (value " << e.value() << ")";
  std::cerr << '\n';
  return exit_code(e.kind());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string data, out, mesh;
  double tol = 1e-10;
  int sign = 1;
  int truncation = kDefaultTruncation;
  int mesh_rho = 32, mesh_theta = 128;
};

int cmd_solve(const SolveArgs& a) {
  const BjorlingData data = io::bjorling_data_from_json(io::read_json(a.data));
  SolveOptions opts;
  opts.tol = a.tol;
  opts.sign = a.sign;
  opts.truncation = a.truncation;
  const SolveResult res = solve(data, opts);
  json doc{{"format", io::kFormat}, {"surface", io::to_json(res.surface)}, {"report", io::to_json(res.report)}};
  io::write_atomic(a.out, doc.dump(2) + "\n");
  if (!a.mesh.empty()) io::write_atomic(a.mesh, io::obj_string(mesh(res.surface, a.mesh_rho, a.mesh_theta)));
  std::cout << io::to_json(res.report).dump() << '\n';
  return kPass;
}

struct ExampleArgs {
  std::string name, out, mesh, profile;
  double K = 2.0, upsilon = 0.5, R = 0.0, r = 0.5;
  int mesh_rho = 32, mesh_theta = 128;
};

int cmd_example(const ExampleArgs& a) {
  extremals::FixtureParams p;
  p.K = a.K;
  p.upsilon = a.upsilon;
  p.R = a.R;
  p.r = a.r;
  const MinimalSurface F = extremals::fixture(a.name, p);
  json doc = io::to_json(F);
  doc["name"] = a.name;
  if (F.multivalued()) doc["period_defect"] = F.period();
  if (!a.out.empty())
    io::write_atomic(a.out, doc.dump(2) + "\n");
  else
    std::cout << doc.dump(2) << '\n';
  if (!a.mesh.empty()) io::write_atomic(a.mesh, io::obj_string(mesh(F, a.mesh_rho, a.mesh_theta)));
  if (!a.profile.empty()) io::write_atomic(a.profile, io::radius_profile_csv(F.h, F.annulus, 50));
  return kPass;
}

struct BoundsArgs {
  std::string kind, sweep, out;
  double K = 1.0;
  std::optional<double> ratio, R, sigma, modulus;
};

struct Sweep {
  double start, stop;
  int count;
};

Sweep parse_sweep(const std::string& s) {
  Sweep sw{};
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> sw.start >> c1 >> sw.stop >> c2 >> sw.count) || c1 != ':' || c2 != ':' || sw.count < 1 ||
      !is.eof())
    throw Error(ErrorKind::invalid_input, "sweep must be start:stop:count");
  return sw;
}

int cmd_bounds(const BoundsArgs& a) {
  using namespace extremals;
  const BoundKind kind = parse_bound_kind(a.kind);
  auto request = [&](double x) {
    BoundRequest q;
    q.kind = kind;
    q.K = a.K;
    switch (kind) {
      case BoundKind::graph: q.sigma = x; break;
      case BoundKind::reverse_harnack:
      case BoundKind::conjectured_cosh: q.modulus = x; break;
      default: q.t = x; break;
    }
    return q;
  };
  const char* param = kind == BoundKind::graph                ? "sigma"
                      : (kind == BoundKind::reverse_harnack ||
                         kind == BoundKind::conjectured_cosh) ? "modulus"
                      : kind == BoundKind::th34               ? "R"
                                                              : "ratio";
  std::optional<double> x;
  for (const auto& v : {a.ratio, a.R, a.sigma, a.modulus})
    if (v) x = v;
  if (is_conjectured(kind)) std::cout << "CONJECTURED (not a theorem)\n";
  if (!a.sweep.empty()) {
    if (a.out.empty()) throw Error(ErrorKind::invalid_input, "--sweep requires --out");
    const Sweep sw = parse_sweep(a.sweep);
    std::ostringstream csv;
    csv << param << ",K,value\n";
    for (int i = 0; i < sw.count; ++i) {
      const double v = sw.count == 1 ? sw.start : sw.start + (sw.stop - sw.start) * i / (sw.count - 1);
      csv << fmt(v) << ',' << fmt(a.K) << ',' << fmt(bound(request(v)).value) << '\n';
    }
    io::write_atomic(a.out, csv.str());
    return kPass;
  }
  if (!x) throw Error(ErrorKind::invalid_input, std::string("missing parameter --") + param);
  std::cout << fmt(bound(request(*x)).value) << '\n';
  return kPass;
}

struct VerifyArgs {
  std::string suite = "all", report;
  int samples = -1;
  std::uint64_t seed = verify::kDefaultSeed;
  bool equality = false;
};

std::string csv_row(const verify::VerifyReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? fmt(v) : std::string(); };
  return r.suite + "," + std::to_string(r.seed) + "," + std::to_string(r.samples) + "," + num(r.min_margin) + "," +
         num(r.arg_lambda) + "," + num(r.arg_rho) + "," + num(r.arg_n) + "," + (r.pass ? "true" : "false");
}

int cmd_verify(const VerifyArgs& a) {
  static const std::vector<std::string> known = {"boundary", "prop51", "prop52", "qforms", "jacobian-energy", "all"};
  if (std::find(known.begin(), known.end(), a.suite) == known.end())
    throw Error(ErrorKind::unknown_name, "unknown suite: " + a.suite);
  auto pick = [&](int def) { return a.samples > 0 ? a.samples : def; };
  std::vector<verify::VerifyReport> reports;
  auto want = [&](const char* s) { return a.suite == s || a.suite == "all"; };
  if (want("boundary")) reports.push_back(verify::boundary_suite(pick(100), a.seed));
  if (want("prop51"))
    reports.push_back(a.equality ? verify::prop51_equality_suite(a.seed) : verify::prop51_suite(pick(200), a.seed));
  if (want("prop52"))
    reports.push_back(a.equality ? verify::prop52_equality_suite(a.seed) : verify::prop52_suite(pick(200), a.seed));
  if (want("qforms")) {
    auto r = verify::qforms_suite(a.samples > 0 ? a.samples : 64);
    r.seed = a.seed;
    reports.push_back(r);
  }
  if (want("jacobian-energy")) reports.push_back(verify::jacobian_energy_suite(pick(50), a.seed));

  std::string csv = "suite,seed,samples,min_margin,arg_lambda,arg_rho,arg_n,pass\n";
  bool ok = true;
  for (const auto& r : reports) {
    csv += csv_row(r) + "\n";
    std::cout << csv_row(r) << '\n';
    if (!r.pass) {
      ok = false;
      std::cerr << "suite " << r.suite << " failed: min margin " << r.min_margin << " at lambda=" << r.arg_lambda
                << " rho=" << r.arg_rho << " n=" << r.arg_n << '\n';
    }
  }
  if (!a.report.empty()) io::write_atomic(a.report, csv);
  return ok ? kPass : kVerifyFail;
}

struct CheckArgs {
  std::string surface;
  std::optional<double> tol;
};

/// Recomputes the conformality residual of a saved surface. Solver outputs are
/// re-evaluated on the solver's own circles, so the numbers match bit for bit.
int cmd_check(const CheckArgs& a) {
  const json doc = io::read_json(a.surface);
  const bool solver_output = doc.contains("surface") && doc.contains("report");
  const MinimalSurface F = io::surface_from_json(solver_output ? doc.at("surface") : doc);
  const double tol = a.tol.value_or(F.tolerance);
  double residual;
  json out{{"format", io::kFormat}};
  if (solver_output) {
    residual = surface_residual(F, doc.at("report").value("step", 0.01));
    const double recorded = doc.at("report").at("residual_max").get<double>();
    out["recorded"] = recorded;
    out["reproduced"] = residual == recorded;
  } else {
    residual = conformality_residual_grid(F, 16, 64).max_relative;
  }
  out["residual_max"] = residual;
  out["tol"] = tol;
  out["pass"] = residual <= tol;
  std::cout << out.dump() << '\n';
  if (!(residual <= tol)) return kVerifyFail;
  if (solver_output && !out["reproduced"].get<bool>()) return kVerifyFail;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bjorling problem solver and verifier for doubly connected minimal surfaces"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the Bjorling problem from boundary data");
  solve_cmd->add_option("--data", sa.data, "Bjorling data JSON")->required();
  solve_cmd->add_option("--out", sa.out, "output JSON (surface and report)")->required();
  solve_cmd->add_option("--mesh", sa.mesh, "optional OBJ mesh of the validity annulus");
  solve_cmd->add_option("--tol", sa.tol, "conformality tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--sign", sa.sign, "branch of the height (+1 or -1)")->check(CLI::IsMember({-1, 1}));
  solve_cmd->add_option("--truncation", sa.truncation, "truncation degree N")->check(CLI::PositiveNumber);

  ExampleArgs ea;
  auto* example_cmd = app.add_subcommand("example", "Write a closed-form fixture surface");
  example_cmd->add_option("--name", ea.name, "fixture name")->required();
  example_cmd->add_option("--K", ea.K, "distortion for catenoidal_slab / extremal_th34");
  example_cmd->add_option("--upsilon", ea.upsilon, "parameter of the upsilon family");
  example_cmd->add_option("--R", ea.R, "outer radius of the annulus");
  example_cmd->add_option("--r", ea.r, "inner radius for nitsche_critical");
  example_cmd->add_option("--out", ea.out, "output JSON (default: stdout)");
  example_cmd->add_option("--mesh", ea.mesh, "OBJ mesh path");
  example_cmd->add_option("--profile", ea.profile, "CSV of image radii rho,min,max,rms");

  BoundsArgs ba;
  double ratio = 0, R = 0, sigma = 0, modulus = 0;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate modulus and distortion bounds");
  bounds_cmd->add_option("--kind", ba.kind, "bound kind")->required();
  bounds_cmd->add_option("--K", ba.K, "distortion K >= 1");
  auto* o_ratio = bounds_cmd->add_option("--ratio", ratio, "ratio R/r");
  auto* o_R = bounds_cmd->add_option("--R", R, "outer radius");
  auto* o_sigma = bounds_cmd->add_option("--sigma", sigma, "image ratio sigma");
  auto* o_mod = bounds_cmd->add_option("--modulus", modulus, "conformal modulus");
  bounds_cmd->add_option("--sweep", ba.sweep, "start:stop:count over the main parameter");
  bounds_cmd->add_option("--out", ba.out, "CSV output for --sweep");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a numerical verification suite");
  verify_cmd->add_option("--suite", va.suite, "boundary, prop51, prop52, qforms, jacobian-energy, all");
  verify_cmd->add_option("--samples", va.samples, "sample count (qforms: max |n|)");
  verify_cmd->add_option("--seed", va.seed, "random seed");
  verify_cmd->add_option("--report", va.report, "CSV report path");
  verify_cmd->add_flag("--equality", va.equality, "prop51/prop52: run the equality family instead");

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Recompute the conformality residual of a saved surface");
  check_cmd->add_option("--surface", ca.surface, "surface or solve output JSON")->required();
  check_cmd->add_option("--tol", ca.tol, "tolerance (default: recorded)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*example_cmd) return cmd_example(ea);
    if (*bounds_cmd) {
      if (*o_ratio) ba.ratio = ratio;
      if (*o_R) ba.R = R;
      if (*o_sigma) ba.sigma = sigma;
      if (*o_mod) ba.modulus = modulus;
      return cmd_bounds(ba);
    }
    if (*verify_cmd) return cmd_verify(va);
    if (*check_cmd) return cmd_check(ca);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
