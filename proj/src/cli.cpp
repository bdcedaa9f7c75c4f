#include "conelw/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace conelw::cli {

namespace fs = std::filesystem;

namespace {

class Stopwatch {
 public:
  void lap(json& timings, const char* stage) {
    const auto now = std::chrono::steady_clock::now();
    timings[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void apply_overrides(const Options& o, Settings& s) {
  if (o.grid) s.grid = *o.grid;
  if (o.quad_panels) s.quad_panels = *o.quad_panels;
  if (o.ode_steps) s.ode_steps = *o.ode_steps;
  if (o.scan_points) s.scan_points = *o.scan_points;
  if (o.root_tol) s.root_tol = *o.root_tol;
  if (o.residual_tol) s.residual_tol = *o.residual_tol;
  if (o.strict_eps) s.strict_eps = *o.strict_eps;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Shared front half of verify and solve. Returns false when the pipeline
// must stop with a structural error (report and exit code already set).
struct Pipeline {
  LoadedInstance loaded;
  std::optional<DerivedConstants> constants;
  std::optional<HypothesisReport> hypotheses;
};

bool run_front(const Options& opts, const char* command, CommandResult& res, Pipeline& pipe,
               json& timings, Stopwatch& clock) {
  json& rep = res.report;
  rep["command"] = command;
  rep["instance"] = {{"path", opts.instance_path}};
  try {
    pipe.loaded = parse_instance_text(read_file(opts.instance_path));
  } catch (const Error& e) {
    rep["status"] = "load_error";
    rep["error"] = {{"kind", "LoadError"}, {"message", e.what()}};
    res.exit_code = kExitStructural;
    return false;
  }
  Settings& settings = pipe.loaded.settings;
  apply_overrides(opts, settings);
  rep["instance"]["hash"] = hex64(pipe.loaded.hash);
  rep["instance"]["settings"] = to_json(settings);
  clock.lap(timings, "load");

  const auto& inst = pipe.loaded.instance;
  const auto& thr = pipe.loaded.thresholds;
  rep["thresholds"] = {{"A", thr.A}, {"B", thr.B}, {"C", thr.C}, {"B_dagger", thr.B_dagger}};

  std::vector<Violation> violations;
  try {
    violations = validate(inst, thr, settings.grid);
  } catch (const Error& e) {
    violations.push_back({"validation", NAN, NAN, e.what()});
  }
  rep["violations"] = to_json(violations);
  clock.lap(timings, "validate");
  if (!violations.empty()) {
    rep["status"] = "invalid_instance";
    res.exit_code = kExitStructural;
    return false;
  }

  try {
    const GreensKernel kernel = build_kernel(inst.p, inst.lambda, settings.quad_panels);
    pipe.constants = derive_constants(inst, thr, kernel, settings.grid, settings.quad_panels);
    rep["constants"] = to_json(*pipe.constants);
    clock.lap(timings, "constants");
    pipe.hypotheses = check_hypotheses(inst, thr, *pipe.constants, settings.grid, settings.strict_eps);
    rep["hypotheses"] = to_json(*pipe.hypotheses);
    clock.lap(timings, "hypotheses");
  } catch (const InadmissibleLambda& e) {
    rep["error"] = to_json(e);
    clock.lap(timings, "constants");
  }
  return true;
}

bool hypotheses_hold(const Pipeline& pipe) {
  return pipe.hypotheses && pipe.hypotheses->all_hold();
}

void finish(const Options& opts, CommandResult& res, json& timings) {
  if (opts.timings) res.report["timings_ms"] = timings;
}

}  // namespace

CommandResult cmd_verify(const Options& opts) {
  CommandResult res;
  json timings = json::object();
  Stopwatch clock;
  Pipeline pipe;
  if (run_front(opts, "verify", res, pipe, timings, clock)) {
    const bool ok = hypotheses_hold(pipe);
    res.report["status"] = ok ? "ok" : (pipe.hypotheses ? "hypotheses_failed" : "inadmissible_lambda");
    res.exit_code = ok ? kExitOk : kExitFailed;
  }
  finish(opts, res, timings);
  return res;
}

CommandResult cmd_solve(const Options& opts) {
  CommandResult res;
  json timings = json::object();
  Stopwatch clock;
  Pipeline pipe;
  if (!run_front(opts, "solve", res, pipe, timings, clock)) {
    finish(opts, res, timings);
    return res;
  }
  json& rep = res.report;
  const auto& inst = pipe.loaded.instance;
  const auto& thr = pipe.loaded.thresholds;
  const auto& settings = pipe.loaded.settings;

  SolveResult solved = solve_all(inst, thr, settings);
  clock.lap(timings, "solve");
  const LocalizationReport loc = classify(solved.solutions, thr);
  clock.lap(timings, "classify");

  fs::path csv_dir;
  std::string stem = "solution";
  if (!opts.csv_dir.empty()) {
    csv_dir = opts.csv_dir;
  } else if (!opts.out.empty()) {
    const fs::path out(opts.out);
    csv_dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    stem = out.stem().string() + ".solution";
  }
  if (!csv_dir.empty()) fs::create_directories(csv_dir);

  json sols = json::array();
  for (std::size_t k = 0; k < solved.solutions.size(); ++k) {
    const auto& curve = solved.solutions[k];
    json s = to_json(curve);
    s["index"] = k + 1;
    s["theta"] = theta(curve);
    s["bucket"] = to_string(loc.solutions[k].bucket);
    s["residuals"] = to_json(solved.checks[k]);
    if (!csv_dir.empty()) {
      const fs::path file = csv_dir / (stem + "_" + std::to_string(k + 1) + ".csv");
      std::ofstream csv(file);
      if (!csv) throw Error("cannot write '" + file.string() + "'");
      write_curve_csv(curve, csv);
      s["csv"] = file.string();
    }
    sols.push_back(std::move(s));
  }
  rep["solutions"] = sols;
  json brackets = json::array();
  for (const auto& b : solved.profile.brackets) brackets.push_back({b.lo, b.hi});
  rep["scan"] = {{"scan_points", solved.scan_points},
                 {"ode_steps", solved.ode_steps},
                 {"brackets", brackets},
                 {"rejected", solved.rejected},
                 {"notes", solved.notes}};
  rep["localization"] = to_json(loc);
  clock.lap(timings, "report");

  const bool hyp = hypotheses_hold(pipe);
  if (hyp && loc.theorem_satisfied) {
    rep["status"] = "ok";
    res.exit_code = kExitOk;
  } else if (hyp) {
    rep["status"] = "missing_buckets";
    rep["scan"]["notes"].push_back(
        "possible missed roots: hypotheses hold but not every bucket Y1, Y2, Y3 is filled; "
        "try a larger --scan-points");
    res.exit_code = kExitFailed;
  } else {
    rep["status"] = pipe.hypotheses ? "hypotheses_failed" : "inadmissible_lambda";
    res.exit_code = kExitFailed;
  }
  finish(opts, res, timings);
  return res;
}

CommandResult cmd_green(const Options& opts, std::ostream& table) {
  CommandResult res;
  json& rep = res.report;
  rep["command"] = "green";
  rep["instance"] = {{"path", opts.instance_path}};
  LoadedInstance loaded;
  try {
    loaded = parse_instance_text(read_file(opts.instance_path));
  } catch (const Error& e) {
    rep["status"] = "load_error";
    rep["error"] = {{"kind", "LoadError"}, {"message", e.what()}};
    res.exit_code = kExitStructural;
    return res;
  }
  apply_overrides(opts, loaded.settings);
  rep["instance"]["hash"] = hex64(loaded.hash);
  rep["instance"]["settings"] = to_json(loaded.settings);
  if (opts.t_points < 2 || opts.s_points < 2) {
    rep["status"] = "bad_arguments";
    rep["error"] = {{"kind", "Usage"}, {"message", "--t and --s need at least 2 points"}};
    res.exit_code = kExitStructural;
    return res;
  }
  try {
    const GreensKernel kernel =
        build_kernel(loaded.instance.p, loaded.instance.lambda, loaded.settings.quad_panels);
    table << "t,s,G\n";
    for (int i = 0; i < opts.t_points; ++i) {
      const double t = static_cast<double>(i) / (opts.t_points - 1);
      for (int j = 0; j < opts.s_points; ++j) {
        const double s = static_cast<double>(j) / (opts.s_points - 1);
        table << format_g17(t) << ',' << format_g17(s) << ',' << format_g17(kernel(t, s)) << '\n';
      }
    }
    const KernelInvariantReport inv = verify_kernel(kernel);
    rep["kernel"] = {{"lambda", kernel.lambda()},
                     {"exp_int_p", kernel.exp_p1()},
                     {"denom", kernel.denom()}};
    rep["invariants"] = to_json(inv);
    rep["status"] = inv.all_ok() ? "ok" : "invariant_failed";
    res.exit_code = inv.all_ok() ? kExitOk : kExitFailed;
  } catch (const InadmissibleLambda& e) {
    rep["status"] = "inadmissible_lambda";
    rep["error"] = to_json(e);
    res.exit_code = kExitStructural;
  } catch (const Error& e) {
    rep["status"] = "error";
    rep["error"] = {{"kind", "Error"}, {"message", e.what()}};
    res.exit_code = kExitStructural;
  }
  return res;
}

namespace {

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("instance", o.instance_path, "problem instance JSON")->required();
  sub->add_option("--out", o.out, "write the report (green: the table) here instead of stdout");
  sub->add_option("--grid", o.grid, "lattice intervals per axis for sampled checks")
      ->check(CLI::PositiveNumber);
  sub->add_option("--quad-panels", o.quad_panels, "Gauss-Legendre panels on [0,1]")
      ->check(CLI::PositiveNumber);
}

void add_solver_flags(CLI::App* sub, Options& o) {
  sub->add_option("--scan-points", o.scan_points, "y(0) scan resolution")
      ->check(CLI::Range(2, 100000000));
  sub->add_option("--ode-steps", o.ode_steps, "RK4 steps on [0,1]")->check(CLI::PositiveNumber);
  sub->add_option("--root-tol", o.root_tol, "bisection width");
  sub->add_option("--residual-tol", o.residual_tol, "residual acceptance threshold");
  sub->add_option("--strict-eps", o.strict_eps, "margin required by strict conditions");
  sub->add_flag("--timings", o.timings, "include per-stage timings in the report");
}

int emit(const CommandResult& res, const std::string& out_path) {
  const std::string text = res.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitStructural;
    }
    out << text;
  }
  if (res.report.contains("error") && res.report["error"].contains("message"))
    std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
  return res.exit_code;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Green's kernel, growth-condition checks and multiple positive solutions for "
               "first-order problems with nonlinear nonlocal boundary conditions"};
  app.require_subcommand(1);
  Options opts;
  std::string summary_path;

  auto* verify = app.add_subcommand("verify", "check the standing hypotheses and (F1)-(F3)");
  add_common(verify, opts);
  add_solver_flags(verify, opts);
  auto* solve = app.add_subcommand("solve", "verify, then find and classify all solutions");
  add_common(solve, opts);
  add_solver_flags(solve, opts);
  solve->add_option("--csv-dir", opts.csv_dir, "directory for solution CSVs");
  auto* green = app.add_subcommand("green", "tabulate G(t,s) and check its identities");
  add_common(green, opts);
  green->add_option("--t", opts.t_points, "number of t values in the table");
  green->add_option("--s", opts.s_points, "number of s values in the table");
  green->add_option("--summary", summary_path, "write the invariant summary JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitStructural;
  }

  try {
    if (*verify) return emit(cmd_verify(opts), opts.out);
    if (*solve) return emit(cmd_solve(opts), opts.out);

    std::ostringstream table;
    CommandResult res = cmd_green(opts, table);
    if (opts.out.empty()) {
      std::cout << table.str();
    } else {
      std::ofstream out(opts.out);
      if (!out) {
        std::cerr << "error: cannot write '" << opts.out << "'\n";
        return kExitStructural;
      }
      out << table.str();
    }
    const std::string summary = res.report.dump(2) + "\n";
    if (!summary_path.empty()) {
      std::ofstream(summary_path) << summary;
    } else if (opts.out.empty()) {
      std::cerr << summary;
    } else {
      std::cout << summary;
    }
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStructural;
  }
}

}  // namespace conelw::cli
