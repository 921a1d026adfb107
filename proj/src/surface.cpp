#include "surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bis {

GeneratingFunction GeneratingFunction::from_expr(const Expr& f) {
  GeneratingFunction g;
  Expr df = f.derivative();
  g.value_ = [f](double x) { return f.eval(x); };
  g.deriv_ = [df](double x) { return df.eval(x); };
  g.closed_value_ = true;
  return g;
}

GeneratingFunction GeneratingFunction::from_derivative(RealFn deriv, double anchor,
                                                       QuadOptions quad) {
  GeneratingFunction g;
  g.deriv_ = std::move(deriv);
  g.anchor_ = anchor;
  g.quad_ = quad;
  g.closed_value_ = false;
  g.value_ = {};
  return g;
}

double GeneratingFunction::value(double x) const {
  if (closed_value_) return value_(x);
  return integrate(deriv_, anchor_, x, quad_);
}

Surface::Surface(GeneratingFunction F, GeneratingFunction G, ParamPoint base,
                 Vec3 base_value, QuadOptions quad)
    : F_(std::move(F)), G_(std::move(G)), base_(base), base_value_(base_value), quad_(quad) {}

Surface Surface::from_exprs(const Expr& F, const Expr& G, ParamPoint base,
                            Vec3 base_value, QuadOptions quad) {
  return Surface(GeneratingFunction::from_expr(F), GeneratingFunction::from_expr(G),
                 base, base_value, quad);
}

Vec3 Surface::eval(ParamPoint p) const {
  const auto& F = F_;
  const auto& G = G_;
  const double dF = F.value(p.r) - F.value(base_.r);
  const double dG = G.value(p.s) - G.value(base_.s);
  const double Ar = integrate([&](double x) { return x * x * F.deriv(x); }, base_.r, p.r, quad_);
  const double As = integrate([&](double x) { return x * x * G.deriv(x); }, base_.s, p.s, quad_);
  const double Br = integrate([&](double x) { return x * F.deriv(x); }, base_.r, p.r, quad_);
  const double Bs = integrate([&](double x) { return x * G.deriv(x); }, base_.s, p.s, quad_);
  const double dd1 = dF - As;  // delta of x - y
  const double dd2 = dG - Ar;  // delta of x + y
  return {base_value_.x1 + 0.5 * (dd1 + dd2), base_value_.x2 + 0.5 * (dd2 - dd1),
          base_value_.x3 + (Br + Bs)};
}

FrameReport Surface::tangents(ParamPoint p, double tol) const {
  const double fp = F_.deriv(p.r);
  const double gp = G_.deriv(p.s);
  FrameReport fr;
  fr.Xr = {0.5 * (1.0 - p.r * p.r) * fp, -0.5 * (1.0 + p.r * p.r) * fp, p.r * fp};
  fr.Xs = {0.5 * (1.0 - p.s * p.s) * gp, 0.5 * (1.0 + p.s * p.s) * gp, p.s * gp};
  fr.Xalpha = fr.Xr + fr.Xs;
  fr.Xbeta = fr.Xr - fr.Xs;
  fr.Eaa = inner(fr.Xalpha, fr.Xalpha, Signature::B3);
  fr.Ebb = inner(fr.Xbeta, fr.Xbeta, Signature::B3);
  fr.Eab = inner(fr.Xalpha, fr.Xbeta, Signature::B3);
  fr.regular = is_regular(p, tol);
  return fr;
}

bool Surface::is_regular(ParamPoint p, double tol) const {
  const double fp = F_.deriv(p.r);
  const double gp = G_.deriv(p.s);
  const double w = 1.0 - p.r * p.r * p.s * p.s;
  return std::fabs(fp) > tol && std::fabs(gp) > tol && std::fabs(w) > tol;
}

Vec3 Surface::unit_normal(ParamPoint p, double tol) const {
  const double fp = F_.deriv(p.r);
  const double gp = G_.deriv(p.s);
  if (std::fabs(fp) <= tol)
    throw Error(ErrorCode::NonRegularPoint, "non-regular point: F'(r) vanishes at r = " + format_double(p.r));
  if (std::fabs(gp) <= tol)
    throw Error(ErrorCode::NonRegularPoint, "non-regular point: G'(s) vanishes at s = " + format_double(p.s));
  if (std::fabs(1.0 - p.r * p.r * p.s * p.s) <= tol)
    throw Error(ErrorCode::NonRegularPoint,
                "non-regular point: r^2 s^2 = 1 at (r, s) = (" + format_double(p.r) + ", " + format_double(p.s) + ")");
  const double sgn = (fp * gp > 0.0) ? 1.0 : -1.0;
  return -sgn * nhat(p);
}

double Surface::mean_curvature_fd(ParamPoint p, double h, double tol) const {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj)
      if (!is_regular({p.r + di * h, p.s + dj * h}, tol))
        throw Error(ErrorCode::NonRegularPoint,
                    "mean_curvature_fd: non-regular stencil point near (r, s) = (" +
                        format_double(p.r) + ", " + format_double(p.s) + ")");

  GridEvaluator g(*this, {p.r - h, p.r, p.r + h}, {p.s - h, p.s, p.s + h});
  const Vec3 X00 = g.at(1, 1);
  const Vec3 Xp = g.at(2, 1), Xm = g.at(0, 1);
  const Vec3 Yp = g.at(1, 2), Ym = g.at(1, 0);
  const Vec3 Xpp = g.at(2, 2), Xpm = g.at(2, 0), Xmp = g.at(0, 2), Xmm = g.at(0, 0);

  const Vec3 Xr = (Xp - Xm) / (2.0 * h);
  const Vec3 Xs = (Yp - Ym) / (2.0 * h);
  const Vec3 Xrr = (Xp - 2.0 * X00 + Xm) / (h * h);
  const Vec3 Xss = (Yp - 2.0 * X00 + Ym) / (h * h);
  const Vec3 Xrs = (Xpp - Xpm - Xmp + Xmm) / (4.0 * h * h);

  const double E = inner(Xr, Xr, Signature::B3);
  const double Ff = inner(Xr, Xs, Signature::B3);
  const double Gg = inner(Xs, Xs, Signature::B3);
  const double den = E * Gg - Ff * Ff;
  if (std::fabs(den) < 1e-12)
    throw Error(ErrorCode::DegenerateFirstForm, "degenerate first fundamental form (EG - F^2 ~ 0)");

  const Vec3 nv = cross(Xr, Xs, Signature::B3);
  const double nn = inner(nv, nv, Signature::B3);
  if (std::fabs(nn) < 1e-14)
    throw Error(ErrorCode::DegenerateFirstForm, "degenerate normal (null cross product)");
  const Vec3 N = nv / std::sqrt(std::fabs(nn));

  const double L = inner(Xrr, N, Signature::B3);
  const double M = inner(Xrs, N, Signature::B3);
  const double Nc = inner(Xss, N, Signature::B3);
  return (L * Gg - 2.0 * M * Ff + Nc * E) / (2.0 * den);
}

Vec3 Surface::wave_residual(ParamPoint p, double h) const {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  GridEvaluator g(*this, {p.r - h, p.r, p.r + h}, {p.s - h, p.s, p.s + h});
  const Vec3 X00 = g.at(1, 1);
  // alpha step: (r,s) -> (r+h, s+h); beta step: (r,s) -> (r+h, s-h).
  const Vec3 Xaa = (g.at(2, 2) - 2.0 * X00 + g.at(0, 0)) / (h * h);
  const Vec3 Xbb = (g.at(2, 0) - 2.0 * X00 + g.at(0, 2)) / (h * h);
  return Xaa - Xbb;
}

GridEvaluator::GridEvaluator(const Surface& surf, std::vector<double> rs, std::vector<double> ss)
    : rs_(std::move(rs)), ss_(std::move(ss)), base_value_(surf.base_value()) {
  for (std::size_t i = 1; i < rs_.size(); ++i)
    if (!(rs_[i - 1] <= rs_[i]))
      throw Error(ErrorCode::InvalidArgument, "grid coordinates must be sorted");
  for (std::size_t j = 1; j < ss_.size(); ++j)
    if (!(ss_[j - 1] <= ss_[j]))
      throw Error(ErrorCode::InvalidArgument, "grid coordinates must be sorted");

  const auto& F = surf.F();
  const auto& G = surf.G();
  const QuadOptions& q = surf.quad();
  const double r0 = surf.base().r;
  const double s0 = surf.base().s;

  auto fp = [&F](double x) { return F.deriv(x); };
  auto gp = [&G](double x) { return G.deriv(x); };

  if (F.closed_value()) {
    dF_.resize(rs_.size());
    const double f0 = F.value(r0);
    for (std::size_t i = 0; i < rs_.size(); ++i) dF_[i] = F.value(rs_[i]) - f0;
  } else {
    dF_ = chained_antiderivative(fp, r0, rs_, q);
  }
  Ar_ = chained_antiderivative([&](double x) { return x * x * fp(x); }, r0, rs_, q);
  Br_ = chained_antiderivative([&](double x) { return x * fp(x); }, r0, rs_, q);

  if (G.closed_value()) {
    dG_.resize(ss_.size());
    const double g0 = G.value(s0);
    for (std::size_t j = 0; j < ss_.size(); ++j) dG_[j] = G.value(ss_[j]) - g0;
  } else {
    dG_ = chained_antiderivative(gp, s0, ss_, q);
  }
  As_ = chained_antiderivative([&](double x) { return x * x * gp(x); }, s0, ss_, q);
  Bs_ = chained_antiderivative([&](double x) { return x * gp(x); }, s0, ss_, q);
}

Vec3 GridEvaluator::at(std::size_t i, std::size_t j) const {
  const double dd1 = dF_[i] - As_[j];
  const double dd2 = dG_[j] - Ar_[i];
  return {base_value_.x1 + 0.5 * (dd1 + dd2), base_value_.x2 + 0.5 * (dd2 - dd1),
          base_value_.x3 + (Br_[i] + Bs_[j])};
}

Vec3 nhat(ParamPoint p) {
  const double den = 1.0 + p.r * p.s;
  return {(p.r + p.s) / den, (p.r - p.s) / den, (p.r * p.s - 1.0) / den};
}

ParamPoint normal_to_param(const Vec3& n, double tol) {
  const double q = inner(n, n, Signature::B3);
  if (std::fabs(q - 1.0) > std::max(tol, 1e-9))
    throw Error(ErrorCode::NotUnitNormal,
                "normal_to_param: <N,N> = " + format_double(q) + ", expected 1");
  if (std::fabs(n.x3) <= tol)
    throw Error(ErrorCode::NormalThirdComponentZero,
                "normal_to_param: third component vanishes");
  const Vec3 m = n.x3 < 0.0 ? n : -n;
  const double den = 1.0 - m.x3;
  ParamPoint p{(m.x1 + m.x2) / den, (m.x1 - m.x2) / den};
  // Alternative form of the inversion; agreement is implied by unit length.
  if (std::fabs(m.x1 - m.x2) > tol) {
    const double alt_r = (1.0 + m.x3) / (m.x1 - m.x2);
    if (std::fabs(alt_r - p.r) > 1e-6 * (1.0 + std::fabs(p.r)))
      throw Error(ErrorCode::NotUnitNormal, "normal_to_param: inconsistent inversion forms");
  }
  if (std::fabs(m.x1 + m.x2) > tol) {
    const double alt_s = (1.0 + m.x3) / (m.x1 + m.x2);
    if (std::fabs(alt_s - p.s) > 1e-6 * (1.0 + std::fabs(p.s)))
      throw Error(ErrorCode::NotUnitNormal, "normal_to_param: inconsistent inversion forms");
  }
  return p;
}

Vec3 stereographic(double alpha, double beta, double tol) {
  const double den = 1.0 + alpha * alpha - beta * beta;
  if (std::fabs(den) <= tol)
    throw Error(ErrorCode::ProjectionSingular,
                "stereographic projection singular at (alpha, beta) = (" +
                    format_double(alpha) + ", " + format_double(beta) + ")");
  return {2.0 * alpha / den, 2.0 * beta / den, (alpha * alpha - beta * beta - 1.0) / den};
}

namespace {

// Newton inversion of (r,s) -> (x,y) with the closed-form Jacobian.
ParamPoint invert_graph(const Surface& surf, double xt, double yt, ParamPoint seed) {
  ParamPoint p = seed;
  for (int it = 0; it < 50; ++it) {
    const Vec3 X = surf.eval(p);
    const double ex = X.x1 - xt;
    const double ey = X.x2 - yt;
    const FrameReport fr = surf.tangents(p);
    const double a = fr.Xr.x1, b = fr.Xs.x1;
    const double c = fr.Xr.x2, d = fr.Xs.x2;
    const double det = a * d - b * c;
    if (std::fabs(det) < 1e-14)
      throw Error(ErrorCode::GraphInversionFailure, "graph inversion: singular Jacobian");
    const double dr = (-d * ex + b * ey) / det;
    const double ds = (c * ex - a * ey) / det;
    p.r += dr;
    p.s += ds;
    if (std::fabs(dr) + std::fabs(ds) < 1e-13 * (1.0 + std::fabs(p.r) + std::fabs(p.s))) return p;
  }
  throw Error(ErrorCode::GraphInversionFailure, "graph inversion: Newton did not converge");
}

}  // namespace

PdeSample bi_pde_sample(const Surface& surf, ParamPoint p, double h) {
  PdeSample out;
  out.at = p;
  if (std::fabs(p.r * p.s) >= 1.0) {
    out.in_domain = false;
    return out;
  }
  out.in_domain = true;

  const Vec3 X0 = surf.eval(p);
  double phi[3][3];
  phi[1][1] = X0.x3;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      const ParamPoint q = invert_graph(surf, X0.x1 + di * h, X0.x2 + dj * h, p);
      phi[di + 1][dj + 1] = surf.eval(q).x3;
    }
  }

  const double h2 = h * h;
  const double px = (phi[2][1] - phi[0][1]) / (2.0 * h);
  const double py = (phi[1][2] - phi[1][0]) / (2.0 * h);
  const double pxx = (phi[2][1] - 2.0 * phi[1][1] + phi[0][1]) / h2;
  const double pyy = (phi[1][2] - 2.0 * phi[1][1] + phi[1][0]) / h2;
  const double pxy = (phi[2][2] - phi[2][0] - phi[0][2] + phi[0][0]) / (4.0 * h2);

  out.residual = (1.0 - py * py) * pxx + 2.0 * px * py * pxy - (1.0 + px * px) * pyy;
  out.hyperbolicity = px * px - py * py + 1.0;
  out.u = 0.5 * (px - py);
  out.v = 0.5 * (px + py);
  const double disc = std::sqrt(std::max(out.hyperbolicity, 0.0));  // sqrt(1 + 4uv)
  out.r_rec = 2.0 * out.u / (1.0 + disc);
  out.s_rec = 2.0 * out.v / (1.0 + disc);
  return out;
}

PdeReport verify_bi_pde(const Surface& surf, const std::vector<ParamPoint>& pts, double h) {
  PdeReport rep;
  rep.min_hyperbolicity = std::numeric_limits<double>::infinity();
  for (const ParamPoint& p : pts) {
    PdeSample s = bi_pde_sample(surf, p, h);
    if (!s.in_domain) {
      ++rep.skipped;
      rep.samples.push_back(s);
      continue;
    }
    ++rep.evaluated;
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::fabs(s.residual));
    rep.min_hyperbolicity = std::min(rep.min_hyperbolicity, s.hyperbolicity);
    rep.max_param_roundtrip =
        std::max({rep.max_param_roundtrip, std::fabs(s.r_rec - p.r), std::fabs(s.s_rec - p.s)});
    rep.samples.push_back(s);
  }
  if (rep.evaluated == 0) rep.min_hyperbolicity = 0.0;
  return rep;
}

}  // namespace bis
