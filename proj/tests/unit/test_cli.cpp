#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "conelw/cli.hpp"
#include "conelw/parallel.hpp"
#include "conelw/report.hpp"

using namespace conelw;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(CONELW_TEST_DATA) + "/" + name; }

cli::Options opts_for(const std::string& name) {
  cli::Options o;
  o.instance_path = data(name);
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "conelw_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CONELW_CLI) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("verify: documented examples") {
  const auto ok = cli::cmd_verify(opts_for("three_solutions.json"));
  CHECK(ok.exit_code == cli::kExitOk);
  CHECK(ok.report["status"] == "ok");
  CHECK(ok.report["hypotheses"]["f1_holds"] == true);
  CHECK(ok.report["hypotheses"]["f2_holds"] == true);
  CHECK(ok.report["hypotheses"]["f3_holds"] == true);
  CHECK_FALSE(ok.report.contains("solutions"));
  CHECK_FALSE(ok.report.contains("timings_ms"));

  const auto low = cli::cmd_verify(opts_for("lambda_1_2.json"));
  CHECK(low.exit_code == cli::kExitFailed);
  CHECK(low.report["hypotheses"]["f1_holds"] == false);

  const auto inadm = cli::cmd_verify(opts_for("inadmissible.json"));
  CHECK(inadm.exit_code == cli::kExitFailed);
  CHECK(inadm.report["status"] == "inadmissible_lambda");
  CHECK(inadm.report["error"]["kind"] == "InadmissibleLambda");
  CHECK(inadm.report["error"]["lambda_margin"].get<double>() == doctest::Approx(-0.05));

  CHECK(cli::cmd_verify(opts_for("does_not_exist.json")).exit_code == cli::kExitStructural);
  const auto missing = cli::cmd_verify(opts_for("missing_lambda.json"));
  CHECK(missing.exit_code == cli::kExitStructural);
  CHECK(missing.report["error"]["message"].get<std::string>().find("/lambda") != std::string::npos);
  const auto bad = cli::cmd_verify(opts_for("bad_expression.json"));
  CHECK(bad.exit_code == cli::kExitStructural);
  CHECK(bad.report["error"]["message"].get<std::string>().find("byte 6") != std::string::npos);
}

TEST_CASE("verify: flags override file settings") {
  auto o = opts_for("three_solutions.json");
  o.grid = 32;
  o.strict_eps = 0.2;
  o.timings = true;
  const auto r = cli::cmd_verify(o);
  CHECK(r.report["instance"]["settings"]["grid"] == 32);
  CHECK(r.report["hypotheses"]["grid"] == 32);
  CHECK(r.exit_code == cli::kExitFailed);
  CHECK(r.report.contains("timings_ms"));
}

TEST_CASE("solve: documented examples") {
  const fs::path dir = scratch("solve");
  auto o = opts_for("three_solutions.json");
  o.out = (dir / "report.json").string();
  const auto r = cli::cmd_solve(o);
  CHECK(r.exit_code == cli::kExitOk);
  CHECK(r.report["status"] == "ok");
  REQUIRE(r.report["solutions"].size() >= 3);
  CHECK(r.report["localization"]["theorem_satisfied"] == true);
  for (const auto& s : r.report["solutions"]) {
    REQUIRE(s.contains("csv"));
    const fs::path csv = s["csv"].get<std::string>();
    CHECK(csv.parent_path() == dir);
    std::ifstream in(csv);
    const auto curve = read_curve_csv(in);
    CHECK(curve.y0 == s["y0"].get<double>());
  }

  const auto zero = cli::cmd_solve(opts_for("zero_forcing.json"));
  CHECK(zero.exit_code == cli::kExitFailed);
  CHECK(zero.report["status"] == "hypotheses_failed");
  CHECK(zero.report["solutions"].size() == 1);

  auto coarse = opts_for("three_solutions.json");
  coarse.scan_points = 8;
  const auto c = cli::cmd_solve(coarse);
  if (c.exit_code == cli::kExitFailed) {
    CHECK(c.report["status"] == "missing_buckets");
    CHECK(c.report["scan"]["notes"].dump().find("possible missed roots") != std::string::npos);
  } else {
    CHECK(c.exit_code == cli::kExitOk);
  }

  CHECK(cli::cmd_solve(opts_for("does_not_exist.json")).exit_code == cli::kExitStructural);
}

TEST_CASE("solve: identical inputs give identical reports") {
  const auto a = cli::cmd_solve(opts_for("three_solutions.json"));
  const auto b = cli::cmd_solve(opts_for("three_solutions.json"));
  CHECK(a.report.dump() == b.report.dump());

  // Echoed settings reproduce the report.
  const fs::path dir = scratch("echo");
  json doc = json::parse(slurp(data("three_solutions.json")));
  doc["settings"] = a.report["instance"]["settings"];
  std::ofstream(dir / "echo.json") << doc.dump();
  cli::Options o;
  o.instance_path = (dir / "echo.json").string();
  auto c = cli::cmd_solve(o);
  CHECK(c.report["solutions"].dump() == a.report["solutions"].dump());
  CHECK(c.report["hypotheses"].dump() == a.report["hypotheses"].dump());
}

TEST_CASE("green: documented examples") {
  std::ostringstream table;
  const auto r = cli::cmd_green(opts_for("three_solutions.json"), table);
  CHECK(r.exit_code == cli::kExitOk);
  CHECK(r.report["invariants"]["all_pass"] == true);
  std::istringstream rows(table.str());
  std::string line;
  std::getline(rows, line);
  CHECK(line == "t,s,G");
  int n = 0;
  while (std::getline(rows, line)) {
    const double g = std::stod(line.substr(line.rfind(',') + 1));
    CHECK((g == 1.0 || g == 2.0));
    ++n;
  }
  CHECK(n == 121);

  std::ostringstream t2;
  const auto e = cli::cmd_green(opts_for("exp_kernel.json"), t2);
  CHECK(e.exit_code == cli::kExitOk);
  CHECK(e.report["invariants"]["all_pass"] == true);

  std::ostringstream t3;
  const auto s = cli::cmd_green(opts_for("singular.json"), t3);
  CHECK(s.exit_code == cli::kExitStructural);
  CHECK(s.report["status"] == "inadmissible_lambda");
}

TEST_CASE("binary: exit-code contract end to end") {
  const fs::path dir = scratch("binary");
  CHECK(run_binary("verify " + data("three_solutions.json")) == 0);
  CHECK(run_binary("verify " + data("lambda_1_2.json")) == 1);
  CHECK(run_binary("verify " + data("does_not_exist.json")) == 2);
  CHECK(run_binary("verify " + data("missing_lambda.json")) == 2);
  CHECK(run_binary("solve " + data("three_solutions.json") + " --out " + (dir / "r.json").string()) == 0);
  CHECK(fs::exists(dir / "r.solution_1.csv"));
  CHECK(json::parse(slurp(dir / "r.json"))["status"] == "ok");
  CHECK(run_binary("solve " + data("zero_forcing.json")) == 1);
  CHECK(run_binary("green " + data("three_solutions.json") + " --out " + (dir / "g.csv").string()) == 0);
  CHECK(run_binary("green " + data("singular.json")) == 2);
  CHECK(run_binary("frobnicate") == 2);
  CHECK(run_binary("verify") == 2);
  CHECK(run_binary("--help") == 0);
}

TEST_CASE("reports do not depend on the worker count") {
  ::setenv("CONELW_THREADS", "1", 1);
  const auto serial = cli::cmd_solve(opts_for("three_solutions.json"));
  ::setenv("CONELW_THREADS", "3", 1);
  const auto three = cli::cmd_solve(opts_for("three_solutions.json"));
  ::unsetenv("CONELW_THREADS");
  const auto all = cli::cmd_solve(opts_for("three_solutions.json"));
  CHECK(serial.report.dump() == three.report.dump());
  CHECK(serial.report.dump() == all.report.dump());
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 57) throw Error("boom");
                  }),
                  Error);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
}
