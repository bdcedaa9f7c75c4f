#include <doctest.h>

#include <bit>
#include <random>
#include <sstream>

#include "conelw/cone.hpp"
#include "conelw/report.hpp"
#include "support.hpp"

using namespace conelw;
using namespace conelw::testing;

TEST_CASE("curve CSV round-trips bit for bit") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto c = SolutionCurve::from_values(random_monotone(rng, 1 + i * 7, 9.0));
    std::stringstream buf;
    write_curve_csv(c, buf);
    const std::string text = buf.str();
    CHECK(text.rfind("t,y\n", 0) == 0);
    const auto back = read_curve_csv(buf);
    REQUIRE(back.values.size() == c.values.size());
    for (std::size_t k = 0; k < c.values.size(); ++k)
      CHECK(std::bit_cast<std::uint64_t>(back.values[k]) == std::bit_cast<std::uint64_t>(c.values[k]));
  }
}

TEST_CASE("curve CSV rejects malformed input") {
  std::stringstream no_header("0,1\n1,2\n");
  CHECK_THROWS_AS(read_curve_csv(no_header), Error);
  std::stringstream bad_grid("t,y\n0,1\n0.3,2\n");
  CHECK_THROWS_AS(read_curve_csv(bad_grid), Error);
  std::stringstream bad_row("t,y\n0 1\n");
  CHECK_THROWS_AS(read_curve_csv(bad_row), Error);
}

TEST_CASE("JSON field names") {
  const auto inst = three_solution_instance();
  const auto thr = three_solution_thresholds();
  const auto consts = derive_constants(inst, thr, build_kernel(inst.p, 2.0), 16);
  const json h = to_json(check_hypotheses(inst, thr, consts, 16));
  for (const char* key : {"f1_holds", "f2_holds", "f3_holds", "worst_margins", "conditions", "grid",
                          "constants"})
    CHECK(h.contains(key));
  CHECK(h["worst_margins"]["F1"].get<double>() == doctest::Approx(0.1));
  CHECK(h["conditions"][0]["witness"].contains("t"));
  CHECK(h["constants"]["M"].get<double>() == doctest::Approx(0.5));

  const std::vector<std::pair<double, double>> nt{{0.5, 0.3}};
  const json l = to_json(classify_values(nt, thr));
  CHECK(l["solutions"][0]["bucket"] == "Y1");
  CHECK(l["theorem_satisfied"] == false);

  const json c = to_json(SolutionCurve::constant(2.0, 4), true);
  for (const char* key : {"y0", "y1", "sup_norm", "min_value", "t", "y"}) CHECK(c.contains(key));
  CHECK_FALSE(to_json(SolutionCurve::constant(2.0, 4)).contains("t"));
}

TEST_CASE("formatting helpers") {
  CHECK(format_g17(0.1) == "0.10000000000000001");
  CHECK(hex64(0xabcULL) == "0000000000000abc");
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
