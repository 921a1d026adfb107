#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "expr.hpp"

using namespace bis;

TEST_CASE("parsing and evaluation of basic forms") {
  CHECK(Expr::parse("1 + 2*3", "x").eval(0.0) == 7.0);
  CHECK(Expr::parse("(1 + 2)*3", "x").eval(0.0) == 9.0);
  CHECK(Expr::parse("x^2 + 1", "x").eval(3.0) == 10.0);
  CHECK(Expr::parse("2^3^2", "x").eval(0.0) == 512.0);  // right associative
  CHECK(Expr::parse("-x^2", "x").eval(2.0) == -4.0);    // ^ binds tighter than unary -
  CHECK(Expr::parse("(-x)^2", "x").eval(2.0) == 4.0);
  CHECK(Expr::parse("2 - 3 - 4", "x").eval(0.0) == -5.0);  // left associative
  CHECK(Expr::parse("24 / 4 / 2", "x").eval(0.0) == 3.0);
  CHECK(Expr::parse("sin(0)", "x").eval(0.0) == 0.0);
  CHECK(Expr::parse("cos(0)", "t").eval(1.0) == 1.0);
  CHECK(Expr::parse("exp(1)", "x").eval(0.0) == doctest::Approx(std::exp(1.0)));
  CHECK(Expr::parse("log(exp(2))", "x").eval(0.0) == doctest::Approx(2.0));
  CHECK(Expr::parse("sqrt(9)", "x").eval(0.0) == doctest::Approx(3.0));
  CHECK(Expr::parse("abs(-3.5)", "x").eval(0.0) == 3.5);
  CHECK(Expr::parse("tanh(0.5)", "u").eval(0.5) == doctest::Approx(std::tanh(0.5)));
  CHECK(Expr::parse("r + r^3/3", "r").eval(0.5) ==
        doctest::Approx(0.5 + 0.125 / 3.0));
  CHECK(Expr::parse("1e-3 + 2.5E2", "x").eval(0.0) == doctest::Approx(250.001));
}

TEST_CASE("variable handling") {
  Expr e = Expr::parse("t^2", "t");
  CHECK(e.eval(4.0) == 16.0);
  CHECK_THROWS_AS(Expr::parse("x^2", "t"), Error);
  try {
    Expr::parse("sin(y)", "x");
    FAIL("expected UnknownIdentifier");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::UnknownIdentifier);
  }
}

TEST_CASE("syntax errors carry byte offsets") {
  struct Case {
    const char* src;
    std::size_t offset;
  };
  const Case cases[] = {
      {"1 +", 3},
      {"(1 + 2", 6},
      {"1 * * 2", 4},
      {")", 0},
      {"sin 1", 4},  // function call requires parentheses
  };
  for (const Case& c : cases) {
    try {
      Expr::parse(c.src, "x");
      FAIL("expected SyntaxError for ", c.src);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::SyntaxError);
      CHECK(err.offset() == c.offset);
      CHECK(std::string(err.what()).find("offset") != std::string::npos);
    }
  }
}

TEST_CASE("domain errors instead of non-finite values") {
  CHECK_THROWS_AS(Expr::parse("1/x", "x").eval(0.0), Error);
  CHECK_THROWS_AS(Expr::parse("log(x)", "x").eval(0.0), Error);
  CHECK_THROWS_AS(Expr::parse("log(x)", "x").eval(-1.0), Error);
  CHECK_THROWS_AS(Expr::parse("sqrt(x)", "x").eval(-4.0), Error);
  CHECK_THROWS_AS(Expr::parse("x^0.5", "x").eval(-4.0), Error);
  CHECK_THROWS_AS(Expr::parse("exp(x)", "x").eval(1e9), Error);  // overflow
  try {
    Expr::parse("1 + 1/(x - 2)", "x").eval(2.0);
    FAIL("expected DomainError");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DomainError);
    CHECK(!err.detail().empty());
  }
}

TEST_CASE("printer emits a parse-print fixpoint") {
  const char* corpus[] = {
      "x",
      "-x",
      "1 + 2*3",
      "(1 + 2)*3",
      "x^2 + 2*x + 1",
      "2^3^2",
      "-x^2",
      "(-x)^2",
      "1 - (2 - 3)",
      "1 - 2 - 3",
      "x/(2*x + 1)",
      "x/2/3",
      "x*(x + 1)*(x + 2)",
      "sin(cos(x))",
      "exp(-x^2/2)",
      "tanh(x)/(1 + abs(x))",
      "sqrt(1 + x^2)",
      "log(1 + exp(x))",
      "x^(x + 1)",
      "2*x^2 - 3*x + 4",
      "-(x + 1)",
      "1/(1 + 1/(1 + 1/x))",
  };
  for (const char* src : corpus) {
    Expr e = Expr::parse(src, "x");
    std::string printed = e.str();
    Expr reparsed = Expr::parse(printed, "x");
    CHECK_MESSAGE(e == reparsed, src, " printed as ", printed);
    CHECK(reparsed.str() == printed);
    // Where defined, values agree.
    for (double x : {0.3, 1.7}) {
      double a, b;
      try {
        a = e.eval(x);
      } catch (const Error&) {
        continue;
      }
      b = reparsed.eval(x);
      CHECK(a == b);
    }
  }
}

namespace {

// Random expression source over a fixed leaf/function set, depth-bounded.
std::string random_expr_str(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 2);
  std::uniform_int_distribution<int> node(0, 6);
  std::uniform_real_distribution<double> cval(0.25, 2.5);
  if (depth <= 0 || leaf(rng) == 0) {
    if (leaf(rng) == 1) return "x";
    return format_double(cval(rng));
  }
  switch (node(rng)) {
    case 0: return "(" + random_expr_str(rng, depth - 1) + " + " + random_expr_str(rng, depth - 1) + ")";
    case 1: return "(" + random_expr_str(rng, depth - 1) + " - " + random_expr_str(rng, depth - 1) + ")";
    case 2: return "(" + random_expr_str(rng, depth - 1) + ")*(" + random_expr_str(rng, depth - 1) + ")";
    case 3: return "sin(" + random_expr_str(rng, depth - 1) + ")";
    case 4: return "cos(" + random_expr_str(rng, depth - 1) + ")";
    case 5: return "tanh(" + random_expr_str(rng, depth - 1) + ")";
    default: return "exp(-(" + random_expr_str(rng, depth - 1) + ")^2/4)";
  }
}

}  // namespace

TEST_CASE("symbolic derivative agrees with central differences") {
  std::mt19937 rng(20240817);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    std::string src = random_expr_str(rng, 3);
    Expr e = Expr::parse(src, "x");
    Expr d = e.derivative();
    std::uniform_real_distribution<double> xs(-1.5, 1.5);
    for (int k = 0; k < 20; ++k) {
      double x = xs(rng);
      const double h = 1e-5;
      double fd, exact, value;
      try {
        value = e.eval(x);
        fd = (e.eval(x + h) - e.eval(x - h)) / (2 * h);
        exact = d.eval(x);
      } catch (const Error&) {
        continue;  // stepped outside the domain
      }
      ++checked;
      CHECK_MESSAGE(std::fabs(exact - fd) < 1e-6 * (1.0 + std::fabs(value)),
                    src, " at x = ", x, ": exact ", exact, " vs fd ", fd);
    }
  }
  CHECK(checked > 200);  // the sweep must actually exercise points
}

TEST_CASE("derivatives of specific functions") {
  CHECK(Expr::parse("x^3", "x").derivative().eval(2.0) == doctest::Approx(12.0));
  CHECK(Expr::parse("sin(x)", "x").derivative().eval(0.0) == doctest::Approx(1.0));
  CHECK(Expr::parse("log(x)", "x").derivative().eval(2.0) == doctest::Approx(0.5));
  CHECK(Expr::parse("sqrt(x)", "x").derivative().eval(4.0) == doctest::Approx(0.25));
  CHECK(Expr::parse("tan(x)", "x").derivative().eval(0.5) ==
        doctest::Approx(1.0 / (std::cos(0.5) * std::cos(0.5))));
  CHECK(Expr::parse("abs(x)", "x").derivative().eval(-2.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(Expr::parse("abs(x)", "x").derivative().eval(0.0), Error);
  // x^x via the general power rule.
  Expr d = Expr::parse("x^x", "x").derivative();
  CHECK(d.eval(2.0) == doctest::Approx(4.0 * (std::log(2.0) + 1.0)));
  // Constant derivative collapses to zero.
  CHECK(Expr::parse("3.5", "x").derivative().eval(10.0) == 0.0);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.0, 2.5e17}) {
    std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}
