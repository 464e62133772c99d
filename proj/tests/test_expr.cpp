#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "expr.hpp"

using ovp::Error;
using ovp::ErrorCode;
using ovp::Expr;

TEST_CASE("literal and precedence evaluation") {
  CHECK(Expr::parse("2+3*4").eval(0) == doctest::Approx(14.0));
  CHECK(Expr::parse("2*3^2").eval(0) == doctest::Approx(18.0));
  CHECK(Expr::parse("2^3^2").eval(0) == doctest::Approx(512.0));  // right assoc
  CHECK(Expr::parse("-2^2").eval(0) == doctest::Approx(-4.0));
  CHECK(Expr::parse("(1+2)*3").eval(0) == doctest::Approx(9.0));
  CHECK(Expr::parse("10-4-3").eval(0) == doctest::Approx(3.0));  // left assoc
  CHECK(Expr::parse("12/4/3").eval(0) == doctest::Approx(1.0));
  CHECK(Expr::parse("r^-2").eval(2.0) == doctest::Approx(0.25));
  CHECK(Expr::parse("-r^2").eval(3.0) == doctest::Approx(-9.0));
  CHECK(Expr::parse("pi").eval(0) == doctest::Approx(M_PI));
  CHECK(Expr::parse("pow(2, 10)").eval(0) == doctest::Approx(1024.0));
  CHECK(Expr::parse("1.5e2").eval(0) == doctest::Approx(150.0));
  CHECK(Expr::parse("2e-1").eval(0) == doctest::Approx(0.2));
  CHECK(Expr::parse("abs(-3.5)").eval(0) == doctest::Approx(3.5));
  CHECK(Expr::parse("sin(pi/2)").eval(0) == doctest::Approx(1.0));
  CHECK(Expr::parse("exp(log(7))").eval(0) == doctest::Approx(7.0));
}

TEST_CASE("variable evaluation") {
  Expr e = Expr::parse("r^2 + 2*r + 1");
  CHECK(e.eval(3.0) == doctest::Approx(16.0));
  CHECK(e.eval(-1.0) == doctest::Approx(0.0));
  CHECK(Expr::parse("sinh(r)").eval(1.0) == doctest::Approx(std::sinh(1.0)));
  CHECK(Expr::parse("tanh(r)/r").eval(0.5) ==
        doctest::Approx(std::tanh(0.5) / 0.5));
  // the variable has two spellings; angular data is written in theta
  CHECK(Expr::parse("1 + 0.5*cos(3*theta)").eval(0.7) ==
        doctest::Approx(1 + 0.5 * std::cos(2.1)));
  CHECK(Expr::parse("theta + r").eval(2.0) == doctest::Approx(4.0));
}

TEST_CASE("print then reparse gives the same tree") {
  const std::vector<std::string> corpus = {
      "r",
      "pi",
      "-r",
      "-(r+1)",
      "r^-2",
      "-r^2",
      "2^-0.5",
      "r - (2 - 3)",
      "r/(2*r)",
      "pow(r,2)^3",
      "1 - -r",
      "sin(r)*cos(r) - tan(r/2)",
      "exp(-r^2/2)/sqrt(2*pi)",
      "log(1 + r^2)",
      "abs(r - 1)",
      "sinh(r)^2 - cosh(r)^2",
      "(r + 1)^(r - 1)",
      "0.5*r^-2.5",
      "2*3+1",
      "r*(r*(r*(r+1)+1)+1)",
  };
  for (const auto& src : corpus) {
    CAPTURE(src);
    Expr e = Expr::parse(src);
    Expr back = Expr::parse(e.str());
    CHECK(e.same_tree(back));
    Expr back2 = Expr::parse(back.str());
    CHECK(back.same_tree(back2));
  }
}

TEST_CASE("symbolic derivative matches centered differences") {
  struct Probe {
    const char* src;
    double lo, hi;
  };
  const std::vector<Probe> probes = {
      {"r^3 - 2*r + 1", -2.0, 2.0},
      {"sin(r)*cos(r)", -3.0, 3.0},
      {"exp(-r^2/2)", -2.0, 2.0},
      {"log(1+r^2)", -2.0, 2.0},
      {"sqrt(1+r^2)", -2.0, 2.0},
      {"tanh(r)", -2.0, 2.0},
      {"sinh(r)/cosh(r)", -2.0, 2.0},
      {"r^2.5", 0.1, 3.0},
      {"pow(r, 1.5)*exp(r)", 0.1, 2.0},
      {"1/(1+r)", 0.0, 2.0},
      {"tan(r)", -1.0, 1.0},
      {"abs(r)", 0.1, 2.0},
      {"(r+1)^r", 0.0, 2.0},
      {"cos(r^2)", -2.0, 2.0},
      {"exp(r)*sin(2*r)", -2.0, 2.0},
      {"2*pi*r - r/3", -2.0, 2.0},
  };
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (const auto& p : probes) {
    Expr e = Expr::parse(p.src);
    Expr d = e.derivative();
    for (int i = 0; i < 16; ++i) {
      double r = p.lo + (p.hi - p.lo) * unit(rng);
      double step = 1e-6 * std::max(1.0, std::abs(r));
      double num = (e.eval(r + step) - e.eval(r - step)) / (2 * step);
      double sym = d.eval(r);
      CAPTURE(p.src);
      CAPTURE(r);
      CHECK(std::abs(sym - num) <= 1e-5 * (1 + std::abs(sym)));
      ++checked;
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("derivative of a constant is zero") {
  CHECK(Expr::parse("pi*2 + 1").derivative().eval(5.0) == 0.0);
  CHECK(Expr::number(3.5).derivative().eval(0.0) == 0.0);
}

TEST_CASE("power rule keeps negative bases differentiable") {
  // d/dr r^2 must work for r < 0; the general a^b rule would take log of a
  // negative base.
  Expr d = Expr::parse("r^2").derivative();
  CHECK(d.eval(-3.0) == doctest::Approx(-6.0));
  Expr d3 = Expr::parse("r^3").derivative();
  CHECK(d3.eval(-2.0) == doctest::Approx(12.0));
}

TEST_CASE("constant detection") {
  double v = 0;
  CHECK(Expr::parse("2*3+1").is_constant(&v));
  CHECK(v == doctest::Approx(7.0));
  CHECK(Expr::parse("pi/2").is_constant(&v));
  CHECK(v == doctest::Approx(M_PI / 2));
  CHECK_FALSE(Expr::parse("r").is_constant());
  CHECK_FALSE(Expr::parse("sin(r)+1").is_constant());
  CHECK(Expr::number(-2.5).is_constant(&v));
  CHECK(v == doctest::Approx(-2.5));
}

TEST_CASE("syntax errors carry byte offsets") {
  auto expect_parse_error = [](const std::string& src) {
    try {
      Expr::parse(src);
      FAIL_CHECK("no error for ", src);
      return Error(ErrorCode::Parse, "");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::Parse);
      CHECK(err.offset() >= 0);
      return err;
    }
  };
  Error e1 = expect_parse_error("2 +");
  CHECK(std::string(e1.what()).find("syntax error") != std::string::npos);
  Error e2 = expect_parse_error("x + 1");
  CHECK(std::string(e2.what()).find("unknown identifier") != std::string::npos);
  CHECK(e2.offset() == 0);
  expect_parse_error("sin()");
  expect_parse_error("(1+2");
  expect_parse_error("1..2");
  expect_parse_error("2 * * 3");
  expect_parse_error("pow(1)");
  expect_parse_error("");
}

TEST_CASE("evaluation domain errors") {
  auto expect_domain = [](const std::string& src, double r) {
    try {
      Expr::parse(src).eval(r);
      FAIL_CHECK("no error for ", src, " at r=", r);
      return std::string();
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::Domain);
      return std::string(err.what());
    }
  };
  CHECK(expect_domain("1/(r-1)", 1.0).find("division by zero") !=
        std::string::npos);
  expect_domain("log(r)", 0.0);
  expect_domain("log(r-2)", 1.0);
  expect_domain("sqrt(r)", -1.0);
  expect_domain("(-2)^0.5", 0.0);
  expect_domain("r^0.5", -4.0);
  expect_domain("0^-1", 0.0);
  expect_domain("exp(r)", 1000.0);  // overflow to non-finite
}

TEST_CASE("empty expression") {
  Expr e;
  CHECK(e.empty());
  CHECK_FALSE(Expr::parse("r").empty());
}
