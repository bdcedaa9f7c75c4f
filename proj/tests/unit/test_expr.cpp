#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "conelw/expr.hpp"

using conelw::EvalError;
using conelw::Expr;
using conelw::ParseError;

TEST_CASE("documented evaluation examples") {
  CHECK(Expr::parse("2*t + 1")(0.5) == 2.0);
  CHECK(Expr::parse("exp(0)")(0.0) == 1.0);
  CHECK(Expr::parse("ramp(y, 1, 2)")(0.0, 1.5) == 0.5);
  CHECK(Expr::parse("t*y")(0.25, 4.0) == 1.0);
  CHECK(Expr::parse("min(3, 0.4 + 2.6*ramp(y,1,2))")(0.0, 0.0) == 0.4);
  CHECK_THROWS_AS(Expr::parse("1/(t-0.5)")(0.5), EvalError);
}

TEST_CASE("precedence and associativity") {
  CHECK(Expr::parse("2+3*4")(0) == 14.0);
  CHECK(Expr::parse("2^3^2")(0) == 512.0);
  CHECK(Expr::parse("-2^2")(0) == -4.0);
  CHECK(Expr::parse("2^-1")(0) == 0.5);
  CHECK(Expr::parse("8/4/2")(0) == 1.0);
  CHECK(Expr::parse("8-4-2")(0) == 2.0);
  CHECK(Expr::parse("--3")(0) == 3.0);
  CHECK(Expr::parse(" ( 1 +\t2 ) * 3 ")(0) == 9.0);
  CHECK(Expr::parse("1.5e1 + .5 + 2E-1")(0) == doctest::Approx(15.7));
}

TEST_CASE("built-in functions") {
  CHECK(Expr::parse("clamp(y, 0, 1)")(0, 3) == 1.0);
  CHECK(Expr::parse("clamp(y, 0, 1)")(0, -3) == 0.0);
  CHECK(Expr::parse("ramp(y, 1, 2)")(0, 0.0) == 0.0);
  CHECK(Expr::parse("ramp(y, 1, 2)")(0, 7.0) == 1.0);
  CHECK(Expr::parse("max(t, y)")(0.2, 0.7) == 0.7);
  CHECK(Expr::parse("abs(t - 1)")(0.25) == 0.75);
  CHECK(Expr::parse("sqrt(4) + log(exp(2))")(0) == doctest::Approx(4.0));
  CHECK(Expr::parse("sin(0) + cos(0)")(0) == 1.0);
}

TEST_CASE("free variables") {
  const Expr p = Expr::parse("1 + sin(3.14159265358979*t)^2");
  CHECK(p.uses_t());
  CHECK_FALSE(p.uses_y());
  const Expr f = Expr::parse("y*y");
  CHECK(f.uses_y());
  CHECK_FALSE(f.uses_t());
}

TEST_CASE("syntax errors carry offset and expectations") {
  try {
    Expr::parse("1/(y-1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Syntax);
    CHECK(e.offset() == 6);
    CHECK_FALSE(e.expected().empty());
  }
  try {
    Expr::parse("2 * * t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(Expr::parse(""), ParseError);
  CHECK_THROWS_AS(Expr::parse("1 2"), ParseError);
  CHECK_THROWS_AS(Expr::parse("1e999"), ParseError);
  CHECK_THROWS_AS(Expr::parse("exp"), ParseError);
}

TEST_CASE("unknown identifiers and arity") {
  try {
    Expr::parse("t + z");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::UnknownIdentifier);
    CHECK(e.offset() == 4);
  }
  try {
    Expr::parse("tan(t)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::UnknownIdentifier);
  }
  try {
    Expr::parse("ramp(y, 1)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::WrongArity);
    CHECK(e.offset() == 0);
  }
  CHECK_THROWS_AS(Expr::parse("exp(1, 2)"), ParseError);
}

TEST_CASE("domain errors name the subexpression") {
  try {
    Expr::parse("1 + log(t - 1)")(0.5);
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.subexpression() == "log((t - 1))");
  }
  CHECK_THROWS_AS(Expr::parse("sqrt(y)")(0, -1), EvalError);
  CHECK_THROWS_AS(Expr::parse("log(0)")(0), EvalError);
  CHECK_THROWS_AS(Expr::parse("(-1)^0.5")(0), EvalError);
  CHECK_THROWS_AS(Expr::parse("exp(1000)")(0), EvalError);
  CHECK_THROWS_AS(Expr::parse("ramp(y, 1, 1)")(0, 1), EvalError);
  CHECK_THROWS_AS(Expr::parse("clamp(y, 2, 1)")(0, 1), EvalError);
}

namespace {

// Random expression source over the full grammar.
std::string random_source(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 2);
  std::uniform_real_distribution<double> num(0.0, 10.0);
  switch (pick(rng)) {
    case 0: return "t";
    case 1: return "y";
    case 2: return std::to_string(num(rng));
    case 3: return "(" + random_source(rng, depth - 1) + " + " + random_source(rng, depth - 1) + ")";
    case 4: return random_source(rng, depth - 1) + " - " + random_source(rng, depth - 1);
    case 5: return random_source(rng, depth - 1) + "*" + random_source(rng, depth - 1);
    case 6: return "-" + random_source(rng, depth - 1);
    case 7: return "(" + random_source(rng, depth - 1) + ")^2";
    case 8: return "min(" + random_source(rng, depth - 1) + ", " + random_source(rng, depth - 1) + ")";
    default:
      return "ramp(" + random_source(rng, depth - 1) + ", 1, 2) / (1 + abs(" +
             random_source(rng, depth - 1) + "))";
  }
}

}  // namespace

TEST_CASE("property: printing round-trips to an identical tree") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 500; ++i) {
    const std::string src = random_source(rng, 4);
    const Expr e = Expr::parse(src);
    const Expr again = Expr::parse(e.to_string());
    INFO(src);
    CHECK(e == again);
    CHECK(again.to_string() == e.to_string());
  }
}

TEST_CASE("property: evaluation is pure") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Expr e = Expr::parse(random_source(rng, 3));
    const double t = u(rng), y = 3.0 * u(rng);
    double first = 0.0;
    try {
      first = e(t, y);
    } catch (const EvalError&) {
      continue;
    }
    for (int r = 0; r < 3; ++r)
      CHECK(std::bit_cast<std::uint64_t>(e(t, y)) == std::bit_cast<std::uint64_t>(first));
  }
}

TEST_CASE("structural equality distinguishes trees") {
  CHECK(Expr::parse("1+2") == Expr::parse("(1)+(2)"));
  CHECK_FALSE(Expr::parse("1+2") == Expr::parse("2+1"));
  CHECK_FALSE(Expr::parse("(1+2)+3") == Expr::parse("1+(2+3)"));
  CHECK_FALSE(Expr::parse("min(t,y)") == Expr::parse("max(t,y)"));
}
