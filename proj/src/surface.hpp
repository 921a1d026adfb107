#pragma once

#include <functional>
#include <vector>

#include "expr.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"

namespace bis {

struct ParamPoint {
  double r = 0.0, s = 0.0;
};

struct FrameReport {
  Vec3 Xr, Xs, Xalpha, Xbeta;
  double Eaa = 0.0, Ebb = 0.0, Eab = 0.0;
  bool regular = false;
};

// One generating function: a value and its derivative.  Closed-form pairs
// come from expressions; tabulated ones supply the derivative and obtain the
// value by integration from an anchor.
class GeneratingFunction {
 public:
  GeneratingFunction() = default;

  static GeneratingFunction from_expr(const Expr& f);
  static GeneratingFunction from_derivative(RealFn deriv, double anchor,
                                            QuadOptions quad = {});

  double value(double x) const;
  double deriv(double x) const { return deriv_(x); }
  bool closed_value() const { return closed_value_; }

 private:
  RealFn value_, deriv_;
  bool closed_value_ = false;
  double anchor_ = 0.0;
  QuadOptions quad_;
};

class Surface;

// Evaluates the surface on a tensor set rs x ss by integrating each
// antiderivative once along sorted coordinates and chaining, so finite
// differences of nearby outputs stay coherent.
class GridEvaluator {
 public:
  GridEvaluator(const Surface& surf, std::vector<double> rs, std::vector<double> ss);

  Vec3 at(std::size_t i, std::size_t j) const;
  const std::vector<double>& rs() const { return rs_; }
  const std::vector<double>& ss() const { return ss_; }

 private:
  std::vector<double> rs_, ss_;
  std::vector<double> dF_, Ar_, Br_;  // per r: F(r)-F(r0), int rho^2 F', int rho F'
  std::vector<double> dG_, As_, Bs_;  // per s
  Vec3 base_value_;
};

// A Barbashov-Chernikov surface
//   x - y = F(r) - int s^2 G'(s) ds
//   x + y = G(s) - int r^2 F'(r) dr
//   z     = int r F'(r) dr + int s G'(s) ds
// anchored so that eval(base) == base_value exactly.
class Surface {
 public:
  Surface(GeneratingFunction F, GeneratingFunction G, ParamPoint base,
          Vec3 base_value, QuadOptions quad = {});

  static Surface from_exprs(const Expr& F, const Expr& G, ParamPoint base = {},
                            Vec3 base_value = {}, QuadOptions quad = {});

  Vec3 eval(ParamPoint p) const;

  // Closed-form tangents and the conformal/null frame:
  //   X_r = ((1-r^2)F'/2, -(1+r^2)F'/2, rF'),  X_s = ((1-s^2)G'/2, (1+s^2)G'/2, sG'),
  //   X_alpha = X_r + X_s, X_beta = X_r - X_s.
  FrameReport tangents(ParamPoint p, double tol = 1e-8) const;

  bool is_regular(ParamPoint p, double tol = 1e-8) const;

  // Oriented unit normal -sgn(F'G') * nhat(r,s); requires a regular point.
  Vec3 unit_normal(ParamPoint p, double tol = 1e-8) const;

  // H from first/second fundamental forms, all by central differences of
  // eval with step h.  O(h^2) + quadrature noise for valid surfaces.
  double mean_curvature_fd(ParamPoint p, double h, double tol = 1e-8) const;

  // Central second differences in alpha and beta of eval composed with
  // (r, s) = (alpha + beta, alpha - beta).
  Vec3 wave_residual(ParamPoint p, double h) const;

  double fprime(double r) const { return F_.deriv(r); }
  double gprime(double s) const { return G_.deriv(s); }

  GridEvaluator grid(std::vector<double> rs, std::vector<double> ss) const {
    return GridEvaluator(*this, std::move(rs), std::move(ss));
  }

  ParamPoint base() const { return base_; }
  Vec3 base_value() const { return base_value_; }
  const QuadOptions& quad() const { return quad_; }
  const GeneratingFunction& F() const { return F_; }
  const GeneratingFunction& G() const { return G_; }

 private:
  GeneratingFunction F_, G_;
  ParamPoint base_;
  Vec3 base_value_;
  QuadOptions quad_;
};

// Normal direction determined by (r,s) alone:
//   ((r+s)/(1+rs), (r-s)/(1+rs), (rs-1)/(1+rs)); B3-unit, third component
//   negative on |rs| < 1.
Vec3 nhat(ParamPoint p);

// Inverts a B3-unit normal with n3 != 0 back to (r, s).
ParamPoint normal_to_param(const Vec3& n, double tol = 1e-8);

// Stereographic image of (alpha, beta, 0) on the unit pseudosphere from
// (0,0,1); singular where 1 + alpha^2 - beta^2 vanishes.
Vec3 stereographic(double alpha, double beta, double tol = 1e-12);

struct PdeSample {
  ParamPoint at;
  bool in_domain = false;  // |rs| < 1
  double residual = 0.0;   // (1-phi_y^2)phi_xx + 2 phi_x phi_y phi_xy - (1+phi_x^2)phi_yy
  double hyperbolicity = 0.0;  // phi_x^2 - phi_y^2 + 1
  double u = 0.0, v = 0.0;
  double r_rec = 0.0, s_rec = 0.0;
};

struct PdeReport {
  std::vector<PdeSample> samples;
  double max_abs_residual = 0.0;
  double min_hyperbolicity = 0.0;
  double max_param_roundtrip = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

// Recovers the graph z = phi(x, y) around each grid point by Newton inversion
// of (r,s) -> (x,y), forms phi derivatives by central differences with step h,
// and checks the Born-Infeld equation, hyperbolicity, and the u/v parameter
// round trip.
PdeSample bi_pde_sample(const Surface& surf, ParamPoint p, double h);
PdeReport verify_bi_pde(const Surface& surf, const std::vector<ParamPoint>& pts, double h);

}  // namespace bis
