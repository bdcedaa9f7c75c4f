#include <doctest.h>

#include <cmath>
#include <random>

#include "conelw/hypotheses.hpp"
#include "support.hpp"

using namespace conelw;
using namespace conelw::testing;

namespace {

DerivedConstants constants_for(const ProblemInstance& inst, const ThresholdSet& thr, int grid = 64) {
  return derive_constants(inst, thr, build_kernel(inst.p, inst.lambda), grid);
}

void check_witness_in_box(const ConditionResult& c) {
  CHECK(c.witness_t >= 0.0);
  CHECK(c.witness_t <= 1.0);
  CHECK(c.witness_y >= c.y_lo);
  CHECK(c.witness_y <= c.y_hi);
}

}  // namespace

TEST_CASE("check_hypotheses: documented examples") {
  const auto inst = make_instance("0", {"0.4"}, 2.0);
  const auto thr = three_solution_thresholds();
  const auto r = check_hypotheses(inst, thr, constants_for(inst, thr), 32);
  CHECK(std::fabs(r.f1.worst_margin - 0.1) < 1e-12);
  CHECK(r.f1.holds);
  CHECK(std::fabs(r.f2.worst_margin + 1.6) < 1e-12);
  CHECK_FALSE(r.f2.holds);
  check_witness_in_box(r.f2);
  CHECK(r.f2.y_lo == 2.0);
  CHECK(r.f2.y_hi == 4.0);
  CHECK_FALSE(r.all_hold());

  // f = MC/m = 4 exactly.
  const auto eq = make_instance("0", {"4"}, 2.0);
  const auto r3 = check_hypotheses(eq, thr, constants_for(eq, thr), 16);
  CHECK(r3.f3.worst_margin == 0.0);
  CHECK(r3.f3.holds);
  CHECK_FALSE(r3.f3.strict);
}

TEST_CASE("check_hypotheses: the three-solution instance") {
  const auto inst = three_solution_instance();
  const auto thr = three_solution_thresholds();
  const auto r = check_hypotheses(inst, thr, constants_for(inst, thr), 64);
  CHECK(r.all_hold());
  CHECK(std::fabs(r.f1.worst_margin - 0.1) < 1e-12);
  CHECK(std::fabs(r.f2.worst_margin - 1.0) < 1e-12);
  CHECK(std::fabs(r.f3.worst_margin - 1.0) < 1e-12);
  CHECK(r.f1.bound == doctest::Approx(0.5));
  CHECK(r.f2.bound == doctest::Approx(2.0));
  CHECK(r.f3.bound == doctest::Approx(4.0));
  CHECK(r.grid == 64);

  const auto shifted = three_solution_instance(0.15);
  const auto rs = check_hypotheses(shifted, thr, constants_for(shifted, thr), 64);
  CHECK_FALSE(rs.f1.holds);
  CHECK(std::fabs(rs.f1.worst_margin + 0.05) < 1e-12);
  check_witness_in_box(rs.f1);
  CHECK(rs.f1.witness_y <= 1.0);
}

TEST_CASE("strict_eps tightens the strict conditions only") {
  const auto inst = three_solution_instance();
  const auto thr = three_solution_thresholds();
  const auto c = constants_for(inst, thr);
  CHECK(check_hypotheses(inst, thr, c, 16, 0.05).f1.holds);
  const auto r = check_hypotheses(inst, thr, c, 16, 0.2);
  CHECK_FALSE(r.f1.holds);
  CHECK(r.f2.holds);
  CHECK(r.f3.holds);
}

TEST_CASE("per-f reporting names the offending term") {
  const auto inst = make_instance("0", {"0.1", "0.3 + 2*ramp(y, 1, 2)"}, 2.0);
  const auto thr = three_solution_thresholds();
  const auto r = check_hypotheses(inst, thr, constants_for(inst, thr), 32);
  // m = 2: bounds MA/m = 0.25, NB/m = 1, MC/m = 2.
  REQUIRE(r.f1.per_f_margin.size() == 2);
  CHECK(r.f1.per_f_holds[0]);
  CHECK_FALSE(r.f1.per_f_holds[1]);
  CHECK(r.f1.witness_f == 1);
  CHECK(std::fabs(r.f1.per_f_margin[1] + 0.05) < 1e-12);
  CHECK_FALSE(r.f2.per_f_holds[0]);
  CHECK(r.f2.per_f_holds[1]);
  CHECK(r.f2.witness_f == 0);
}

TEST_CASE("property: margins scale with the forcing") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  const auto thr = three_solution_thresholds();
  const auto base = three_solution_instance();
  const auto c = constants_for(base, thr);
  const auto r1 = check_hypotheses(base, thr, c, 16);
  for (int i = 0; i < 40; ++i) {
    const double kappa = u(rng);
    auto scaled = base;
    scaled.f[0] = Expr::parse(std::to_string(kappa) + "*(" + base.f[0].source() + ")");
    const double k = std::stod(std::to_string(kappa));
    const auto r = check_hypotheses(scaled, thr, c, 16);
    // margin_F1 = bound - kappa f_max etc.
    CHECK(std::fabs(r.f1.worst_margin - (r1.f1.bound - k * (r1.f1.bound - r1.f1.worst_margin))) < 1e-12);
    CHECK(std::fabs(r.f2.worst_margin - (k * (r1.f2.worst_margin + r1.f2.bound) - r1.f2.bound)) < 1e-12);
    CHECK(std::fabs(r.f3.worst_margin - (r1.f3.bound - k * (r1.f3.bound - r1.f3.worst_margin))) < 1e-12);
    CHECK(r.f1.holds == (r.f1.worst_margin > 0.0));
    CHECK(r.f2.holds == (r.f2.worst_margin > 0.0));
    CHECK(r.f3.holds == (r.f3.worst_margin >= 0.0));
  }
}

TEST_CASE("property: witnesses stay in their boxes and failures survive refinement") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto thr = three_solution_thresholds();
  for (int i = 0; i < 30; ++i) {
    const double a = 3 * u(rng), b = 3 * u(rng), w = 1 + 9 * u(rng);
    const std::string src = std::to_string(a) + " + " + std::to_string(b) + "*sin(" +
                            std::to_string(w) + "*t*y)^2";
    const auto inst = make_instance("0", {src.c_str()}, 2.0);
    const auto c = constants_for(inst, thr);
    const auto coarse = check_hypotheses(inst, thr, c, 8);
    const auto fine = check_hypotheses(inst, thr, c, 32);  // contains the coarse lattice
    for (const auto* r : {&coarse, &fine}) {
      check_witness_in_box(r->f1);
      check_witness_in_box(r->f2);
      check_witness_in_box(r->f3);
    }
    if (!coarse.f1.holds) CHECK_FALSE(fine.f1.holds);
    if (!coarse.f2.holds) CHECK_FALSE(fine.f2.holds);
    if (!coarse.f3.holds) CHECK_FALSE(fine.f3.holds);
    CHECK(fine.f1.worst_margin <= coarse.f1.worst_margin);
  }
}
