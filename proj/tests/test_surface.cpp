#include "doctest.h"

#include <cmath>
#include <vector>

#include "expr.hpp"
#include "surface.hpp"

using namespace bis;

namespace {

Surface identity_surface() {
  return Surface::from_exprs(Expr::parse("r", "r"), Expr::parse("s", "s"));
}

// Closed form for F(r) = r, G(s) = s anchored at (0,0) -> (0,0,0):
//   x - y = r - s^3/3, x + y = s - r^3/3, z = (r^2 + s^2)/2.
Vec3 identity_closed(double r, double s) {
  const double d1 = r - s * s * s / 3.0;
  const double d2 = s - r * r * r / 3.0;
  return {(d1 + d2) / 2.0, (d2 - d1) / 2.0, (r * r + s * s) / 2.0};
}

// Closed form for F(r) = sin r, G(s) = s anchored at (0,0) -> (0,0,0), using
//   int_0^r p^2 cos p dp = r^2 sin r + 2 r cos r - 2 sin r
//   int_0^r p cos p dp   = r sin r + cos r - 1.
Vec3 sin_closed(double r, double s) {
  const double d1 = std::sin(r) - s * s * s / 3.0;
  const double d2 = s - (r * r * std::sin(r) + 2.0 * r * std::cos(r) - 2.0 * std::sin(r));
  return {(d1 + d2) / 2.0, (d2 - d1) / 2.0,
          (r * std::sin(r) + std::cos(r) - 1.0) + s * s / 2.0};
}

}  // namespace

TEST_CASE("evaluation matches closed forms") {
  Surface id = identity_surface();
  Surface sn = Surface::from_exprs(Expr::parse("sin(r)", "r"), Expr::parse("s", "s"));
  for (double r : {-0.7, -0.2, 0.0, 0.4, 0.9})
    for (double s : {-0.8, -0.1, 0.0, 0.3, 0.6}) {
      CHECK(sup_norm(id.eval({r, s}) - identity_closed(r, s)) < 1e-11);
      CHECK(sup_norm(sn.eval({r, s}) - sin_closed(r, s)) < 1e-11);
    }
}

TEST_CASE("base anchoring is exact") {
  Surface surf = Surface::from_exprs(Expr::parse("tanh(r)", "r"),
                                     Expr::parse("sinh(s)", "s"), {0.25, -0.5},
                                     {1.0, 2.0, 3.0});
  Vec3 at_base = surf.eval({0.25, -0.5});
  CHECK(at_base.x1 == 1.0);
  CHECK(at_base.x2 == 2.0);
  CHECK(at_base.x3 == 3.0);
}

TEST_CASE("tangents match finite differences and the closed frame") {
  Surface surf = Surface::from_exprs(Expr::parse("exp(r) - 1", "r"),
                                     Expr::parse("s + s^3/3", "s"));
  const double h = 1e-5;
  for (double r : {-0.5, 0.1, 0.8})
    for (double s : {-0.6, 0.0, 0.5}) {
      FrameReport fr = surf.tangents({r, s});
      Vec3 fd_r = (surf.eval({r + h, s}) - surf.eval({r - h, s})) / (2 * h);
      Vec3 fd_s = (surf.eval({r, s + h}) - surf.eval({r, s - h})) / (2 * h);
      CHECK(sup_norm(fr.Xr - fd_r) < 1e-8);
      CHECK(sup_norm(fr.Xs - fd_s) < 1e-8);
      CHECK(sup_norm(fr.Xalpha - (fr.Xr + fr.Xs)) == 0.0);
      CHECK(sup_norm(fr.Xbeta - (fr.Xr - fr.Xs)) == 0.0);

      const double fp = std::exp(r), gp = 1.0 + s * s;
      const double expected = (1.0 + r * s) * (1.0 + r * s) * fp * gp;
      CHECK(fr.Eaa == doctest::Approx(expected).epsilon(1e-12));
      CHECK(fr.Ebb == doctest::Approx(-expected).epsilon(1e-12));
      CHECK(std::fabs(fr.Eab) < 1e-12);
      // Null directions of the B3 form.
      CHECK(std::fabs(inner(fr.Xr, fr.Xr, Signature::B3)) < 1e-12);
      CHECK(std::fabs(inner(fr.Xs, fr.Xs, Signature::B3)) < 1e-12);
    }
}

TEST_CASE("normal direction, unit property, and orientation") {
  Surface surf = identity_surface();
  for (double r : {-0.6, 0.0, 0.7})
    for (double s : {-0.5, 0.2, 0.6}) {
      Vec3 N = surf.unit_normal({r, s});
      Vec3 tilde = nhat({r, s});
      // F'G' = 1 > 0, so N = -nhat.
      CHECK(sup_norm(N + tilde) < 1e-12);
      CHECK(inner(N, N, Signature::B3) == doctest::Approx(1.0).epsilon(1e-12));
      FrameReport fr = surf.tangents({r, s});
      CHECK(std::fabs(inner(N, fr.Xr, Signature::B3)) < 1e-12);
      CHECK(std::fabs(inner(N, fr.Xs, Signature::B3)) < 1e-12);
    }
  // Flipping the sign of F' flips the orientation.
  Surface neg = Surface::from_exprs(Expr::parse("-r", "r"), Expr::parse("s", "s"));
  Vec3 N = neg.unit_normal({0.3, 0.2});
  CHECK(sup_norm(N - nhat({0.3, 0.2})) < 1e-12);
}

TEST_CASE("nhat identities") {
  for (double r : {-0.9, -0.3, 0.0, 0.5, 0.8})
    for (double s : {-0.7, 0.0, 0.4, 0.9}) {
      Vec3 n = nhat({r, s});
      CHECK(inner(n, n, Signature::B3) == doctest::Approx(1.0).epsilon(1e-12));
      if (std::fabs(r * s) < 1.0) CHECK(n.x3 < 0.0);
      // Stereographic form agrees under alpha = (r+s)/2, beta = (r-s)/2.
      Vec3 st = stereographic((r + s) / 2.0, (r - s) / 2.0);
      CHECK(sup_norm(st - n) < 1e-12);
    }
  CHECK_THROWS_AS(stereographic(0.0, 1.0), Error);  // 1 + a^2 - b^2 = 0
}

TEST_CASE("normal inversion round-trips and validates") {
  Surface surf = Surface::from_exprs(Expr::parse("r + r^3/3", "r"),
                                     Expr::parse("sinh(s)", "s"));
  for (double r : {-0.5, 0.1, 0.6})
    for (double s : {-0.4, 0.0, 0.5}) {
      Vec3 N = surf.unit_normal({r, s});
      ParamPoint p = normal_to_param(N);
      CHECK(p.r == doctest::Approx(r).epsilon(1e-12));
      CHECK(p.s == doctest::Approx(s).epsilon(1e-12));
      // The antipodal representative inverts to the same parameters.
      ParamPoint q = normal_to_param(-N);
      CHECK(q.r == doctest::Approx(r).epsilon(1e-12));
      CHECK(q.s == doctest::Approx(s).epsilon(1e-12));
    }
  try {
    normal_to_param({0.3, 0.4, 0.5});
    FAIL("expected NotUnitNormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitNormal);
  }
  try {
    normal_to_param({1.0, 0.0, 0.0});  // unit, but third component zero
    FAIL("expected NormalThirdComponentZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NormalThirdComponentZero);
  }
}

TEST_CASE("regularity detection") {
  Surface sq = Surface::from_exprs(Expr::parse("r^2", "r"), Expr::parse("s", "s"));
  CHECK(!sq.is_regular({0.0, 0.3}));  // F'(0) = 0
  CHECK(sq.is_regular({0.5, 0.3}));
  CHECK_THROWS_AS(sq.unit_normal({0.0, 0.3}), Error);
  try {
    sq.unit_normal({0.0, 0.3});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonRegularPoint);
  }
  // |rs| = 1 boundary counts as non-regular.
  Surface id = identity_surface();
  CHECK(!id.is_regular({1.0, 1.0}));
}

TEST_CASE("mean curvature vanishes to finite-difference accuracy") {
  Surface surf = Surface::from_exprs(Expr::parse("tanh(r)", "r"),
                                     Expr::parse("sinh(s)", "s"));
  for (double r : {-0.5, 0.2, 0.6})
    for (double s : {-0.4, 0.0, 0.5})
      CHECK(std::fabs(surf.mean_curvature_fd({r, s}, 1e-3)) < 1e-4);
}

TEST_CASE("mean curvature rejects degenerate points") {
  Surface sq = Surface::from_exprs(Expr::parse("r^2", "r"), Expr::parse("s", "s"));
  CHECK_THROWS_AS(sq.mean_curvature_fd({0.0, 0.2}, 1e-3), Error);
}

TEST_CASE("wave residual is at rounding level for exact surfaces") {
  Surface surf = Surface::from_exprs(Expr::parse("sin(r)", "r"),
                                     Expr::parse("s + s^3/3", "s"));
  for (double r : {-0.4, 0.3})
    for (double s : {-0.3, 0.5})
      CHECK(sup_norm(surf.wave_residual({r, s}, 1e-3)) < 1e-5);
}

TEST_CASE("grid evaluator agrees with pointwise evaluation") {
  Surface surf = Surface::from_exprs(Expr::parse("exp(r) - 1", "r"),
                                     Expr::parse("s", "s"), {0.1, -0.2}, {5.0, 6.0, 7.0});
  std::vector<double> rs = {-0.4, 0.1, 0.35, 0.8};
  std::vector<double> ss = {-0.6, -0.2, 0.0, 0.55};
  GridEvaluator ev = surf.grid(rs, ss);
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < ss.size(); ++j)
      CHECK(sup_norm(ev.at(i, j) - surf.eval({rs[i], ss[j]})) < 1e-11);
  // Base point included in the grid reproduces base_value exactly.
  Vec3 at_base = ev.at(1, 1);
  CHECK(at_base.x1 == 5.0);
  CHECK(at_base.x2 == 6.0);
  CHECK(at_base.x3 == 7.0);
}

TEST_CASE("generating functions from derivative closures") {
  GeneratingFunction F = GeneratingFunction::from_derivative(
      [](double r) { return std::cos(r); }, 0.0);
  GeneratingFunction G = GeneratingFunction::from_derivative(
      [](double) { return 1.0; }, 0.0);
  Surface tab(std::move(F), std::move(G), {0.0, 0.0}, {0.0, 0.0, 0.0});
  Surface sym = Surface::from_exprs(Expr::parse("sin(r)", "r"), Expr::parse("s", "s"));
  for (double r : {-0.5, 0.3})
    for (double s : {-0.2, 0.4})
      CHECK(sup_norm(tab.eval({r, s}) - sym.eval({r, s})) < 1e-10);
}

TEST_CASE("graph recovery solves the quasilinear equation") {
  Surface id = identity_surface();
  std::vector<ParamPoint> pts;
  for (double r : {-0.4, -0.1, 0.2, 0.4})
    for (double s : {-0.4, 0.0, 0.3})
      pts.push_back({r, s});
  PdeReport rep = verify_bi_pde(id, pts, 1e-3);
  CHECK(rep.evaluated == pts.size());
  CHECK(rep.skipped == 0);
  CHECK(rep.max_abs_residual < 1e-3);
  CHECK(rep.min_hyperbolicity > 0.0);
  CHECK(rep.max_param_roundtrip < 1e-5);
}

TEST_CASE("graph recovery skips points outside the graph domain") {
  Surface id = identity_surface();
  PdeSample out = bi_pde_sample(id, {1.5, 0.8}, 1e-3);  // |rs| > 1
  CHECK(!out.in_domain);
}
