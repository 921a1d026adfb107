#include "doctest.h"

#include <cmath>
#include <vector>

#include "quadrature.hpp"

using namespace bis;

TEST_CASE("known integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(x); }, -1.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-12));
  // A sharply peaked integrand needs subdivision.
  CHECK(integrate([](double x) { return std::exp(-100.0 * x * x); }, -5.0, 5.0) ==
        doctest::Approx(std::sqrt(M_PI) / 10.0).epsilon(1e-10));
}

TEST_CASE("orientation and degenerate interval") {
  auto f = [](double x) { return std::cos(x); };
  CHECK(integrate(f, 2.0, 2.0) == 0.0);
  CHECK(integrate(f, 0.0, 1.0) == doctest::Approx(-integrate(f, 1.0, 0.0)).epsilon(1e-14));
}

TEST_CASE("non-convergence raises") {
  QuadOptions opts;
  opts.max_subdivisions = 3;
  auto nasty = [](double x) { return std::sin(1.0 / (x * x + 1e-8)); };
  CHECK_THROWS_AS(integrate(nasty, -1.0, 1.0, opts), Error);
  try {
    integrate(nasty, -1.0, 1.0, opts);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureNonConvergence);
  }
}

TEST_CASE("integrand exceptions propagate") {
  auto thrower = [](double) -> double { throw Error(ErrorCode::DomainError, "boom"); };
  CHECK_THROWS_AS(integrate(thrower, 0.0, 1.0), Error);
}

TEST_CASE("chained antiderivative matches pointwise integration") {
  auto f = [](double x) { return std::cos(3.0 * x) + x; };
  std::vector<double> xs;
  for (int i = 0; i <= 40; ++i) xs.push_back(-2.0 + 4.0 * i / 40.0);
  const double anchor = 0.37;
  std::vector<double> vals = chained_antiderivative(f, anchor, xs);
  REQUIRE(vals.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double direct = integrate(f, anchor, xs[i]);
    CHECK(vals[i] == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("chained antiderivative differences are locally coherent") {
  // Adjacent differences must equal the panel integrals to rounding accuracy,
  // which keeps finite differences of the output meaningful.
  auto f = [](double x) { return std::exp(-x * x); };
  std::vector<double> xs = {0.1, 0.1 + 1e-6, 0.1 + 2e-6};
  std::vector<double> vals = chained_antiderivative(f, -1.0, xs);
  double d1 = vals[1] - vals[0];
  double panel = integrate(f, xs[0], xs[1]);
  CHECK(d1 == doctest::Approx(panel).epsilon(1e-10));
}

TEST_CASE("anchor inside, outside, and at grid points") {
  auto f = [](double x) { return 2.0 * x; };
  std::vector<double> xs = {-1.0, 0.0, 2.0};
  for (double anchor : {-3.0, -1.0, 0.5, 2.0, 7.0}) {
    std::vector<double> vals = chained_antiderivative(f, anchor, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
      CHECK(vals[i] ==
            doctest::Approx(xs[i] * xs[i] - anchor * anchor).epsilon(1e-12));
  }
}
