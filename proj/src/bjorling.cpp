#include "bjorling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bis {

namespace {

// exp(-1/(1-u^2)) on (-1,1), zero outside; peak value exp(-1) at u = 0.
double mollifier(double u) {
  const double w = 1.0 - u * u;
  if (w <= 1e-12) return 0.0;
  return std::exp(-1.0 / w);
}

double mollifier_deriv(double u) {
  const double w = 1.0 - u * u;
  if (w <= 1e-12) return 0.0;
  return std::exp(-1.0 / w) * (-2.0 * u / (w * w));
}

}  // namespace

double ReconstructedFG::Bump::value(double x) const {
  const double u = (2.0 * x - lo - hi) / (hi - lo);
  return amplitude * mollifier(u);
}

double ReconstructedFG::Bump::deriv(double x) const {
  const double u = (2.0 * x - lo - hi) / (hi - lo);
  return amplitude * mollifier_deriv(u) * 2.0 / (hi - lo);
}

double ReconstructedFG::extended_deriv(const CubicSpline& sp, double x) const {
  const double lo = sp.x_front(), hi = sp.x_back();
  // The spline tabulates the derivative itself, so its value IS F' or G'.
  if (x >= lo && x <= hi) return sp.value(x);
  const bool left = x < lo;
  const double edge = left ? lo : hi;
  const double v = sp.value(edge);
  if (policy_ == ExtendPolicy::Constant) return v;
  const double d = std::fabs(x - edge);
  const double w = taper_width_;
  if (d >= w) return v;
  double m = sp.deriv(edge);
  if (left) m = -m;  // slope along increasing distance from the interval
  const double cap = 2.0 * std::fabs(v) / w;
  if (std::fabs(m) > cap) m = (m > 0 ? cap : -cap);
  // v + m d (1 - d/w): matches value and one-sided slope at the edge, levels
  // off to v at distance w, and stays within |v|/2 of v.
  return v + m * d * (1.0 - d / w);
}

double ReconstructedFG::fprime(double x) const {
  double v = extended_deriv(fp_, x);
  if (bump_) v += bump_->deriv(x);
  return v;
}

double ReconstructedFG::gprime(double x) const { return extended_deriv(gp_, x); }

double ReconstructedFG::fvalue(double x) const {
  return integrate([this](double y) { return fprime(y); }, anchor_.r, x, quad_);
}

double ReconstructedFG::gvalue(double x) const {
  return integrate([this](double y) { return gprime(y); }, anchor_.s, x, quad_);
}

std::vector<double> ReconstructedFG::f_knots() const {
  CubicSpline sp(r_knots_, fp_knots_);
  std::vector<double> ints = sp.knot_integrals();
  // Shift so the value at the anchor r is zero.
  CubicSpline acc(r_knots_, ints);
  const double at_anchor = acc.value(anchor_.r);
  for (double& v : ints) v -= at_anchor;
  return ints;
}

std::vector<double> ReconstructedFG::g_knots() const {
  CubicSpline sp(s_knots_, gp_knots_);
  std::vector<double> ints = sp.knot_integrals();
  CubicSpline acc(s_knots_, ints);
  const double at_anchor = acc.value(anchor_.s);
  for (double& v : ints) v -= at_anchor;
  return ints;
}

void ReconstructedFG::set_extension(ExtendPolicy policy, double width) {
  if (policy == ExtendPolicy::Taper && !(width > 0.0))
    throw Error(ErrorCode::InvalidArgument, "taper width must be positive");
  policy_ = policy;
  taper_width_ = width;
}

double ReconstructedFG::bump_value(double x) const { return bump_ ? bump_->value(x) : 0.0; }

ReconstructedFG ReconstructedFG::perturbed(double lo, double hi, double amplitude) const {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bump interval must have lo < hi");
  if (!(amplitude > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump amplitude must be positive");
  const auto i1 = I1();
  const double margin = 0.05 * (i1[1] - i1[0]);
  if (hi > i1[0] - margin && lo < i1[1] + margin)
    throw Error(ErrorCode::IntervalOverlapsData,
                "bump interval (" + format_double(lo) + ", " + format_double(hi) +
                    ") meets a neighborhood of the data interval [" + format_double(i1[0]) +
                    ", " + format_double(i1[1]) + "]");

  // inf |F'| over the closed bump interval (extension included).
  double inf_fp = std::numeric_limits<double>::infinity();
  const int kProbe = 4001;
  for (int i = 0; i < kProbe; ++i) {
    const double x = lo + (hi - lo) * i / (kProbe - 1);
    inf_fp = std::min(inf_fp, std::fabs(extended_deriv(fp_, x)));
  }
  if (!(inf_fp > 0.0))
    throw Error(ErrorCode::AmplitudeUnachievable,
                "F' vanishes on the bump interval; no admissible amplitude");

  // Largest |d/dx| of the unit bump on this interval.
  double max_unit_slope = 0.0;
  Bump unit{lo, hi, 1.0};
  for (int i = 0; i < kProbe; ++i) {
    const double x = lo + (hi - lo) * i / (kProbe - 1);
    max_unit_slope = std::max(max_unit_slope, std::fabs(unit.deriv(x)));
  }
  const double cap = 0.5 * inf_fp / max_unit_slope;
  const double eff = std::min(amplitude, cap);

  ReconstructedFG out = *this;
  out.bump_ = Bump{lo, hi, eff};
  return out;
}

Surface ReconstructedFG::make_surface(QuadOptions quad) const {
  ReconstructedFG self = *this;  // the surface owns an immutable copy
  auto fp = GeneratingFunction::from_derivative(
      [self](double x) { return self.fprime(x); }, anchor_.r, quad);
  auto gp = GeneratingFunction::from_derivative(
      [self](double x) { return self.gprime(x); }, anchor_.s, quad);
  return Surface(std::move(fp), std::move(gp), anchor_, anchor_value_, quad);
}

ReconstructedFG reconstruct_fg(const BjorlingStrip& strip, double consistency_tol, double tol) {
  ParamCurve pc = param_curve(strip, tol);
  const std::size_t n = pc.t.size();

  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(pc.r[i] * pc.s[i]) >= 1.0)
      throw Error(ErrorCode::DomainViolation,
                  "|r s| >= 1 at t = " + format_double(pc.t[i]) +
                      "; the strip leaves the soliton domain");

  auto monotone = [](const std::vector<double>& v) {
    int dir = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      const double d = v[i] - v[i - 1];
      if (d == 0.0) return false;
      const int sg = d > 0 ? 1 : -1;
      if (dir == 0) dir = sg;
      if (sg != dir) return false;
    }
    return true;
  };
  if (!monotone(pc.r))
    throw Error(ErrorCode::NonMonotoneParamCurve, "r(t) is not strictly monotone");
  if (!monotone(pc.s))
    throw Error(ErrorCode::NonMonotoneParamCurve, "s(t) is not strictly monotone");

  std::vector<double> fp_t(n), gp_t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = pc.r[i], s = pc.s[i];
    const double w = 1.0 - r * r * s * s;
    const Vec3& cd = strip.samples[i].cdot;
    const double sum = cd.x1 + cd.x2;   // (x+y)'
    const double diff = cd.x1 - cd.x2;  // (x-y)'
    if (std::fabs(pc.rdot[i]) <= tol || std::fabs(pc.sdot[i]) <= tol)
      throw Error(ErrorCode::NonMonotoneParamCurve,
                  "r'(t) or s'(t) vanishes at t = " + format_double(pc.t[i]));
    fp_t[i] = (s * s * sum + diff) / (w * pc.rdot[i]);
    gp_t[i] = (sum + r * r * diff) / (w * pc.sdot[i]);
  }

  // Remaining tangency equation.
  double worst = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z_pred = pc.r[i] * fp_t[i] * pc.rdot[i] + pc.s[i] * gp_t[i] * pc.sdot[i];
    const double resid =
        std::fabs(strip.samples[i].cdot.x3 - z_pred) / (1.0 + std::fabs(strip.samples[i].cdot.x3));
    if (resid > worst) {
      worst = resid;
      worst_i = i;
    }
  }
  if (worst > consistency_tol)
    throw Error(ErrorCode::ConsistencyFailure,
                "strip data are not tangency-consistent: relative residual " +
                    format_double(worst) + " at t = " + format_double(pc.t[worst_i]));

  ReconstructedFG out;
  out.pc_ = pc;
  out.anchor_ = {pc.r.front(), pc.s.front()};
  out.anchor_value_ = strip.samples.front().c;

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pc.r[a] < pc.r[b]; });
  out.r_knots_.resize(n);
  out.fp_knots_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.r_knots_[i] = pc.r[idx[i]];
    out.fp_knots_[i] = fp_t[idx[i]];
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pc.s[a] < pc.s[b]; });
  out.s_knots_.resize(n);
  out.gp_knots_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.s_knots_[i] = pc.s[idx[i]];
    out.gp_knots_[i] = gp_t[idx[i]];
  }
  out.fp_ = CubicSpline(out.r_knots_, out.fp_knots_);
  out.gp_ = CubicSpline(out.s_knots_, out.gp_knots_);
  return out;
}

SolutionResidual verify_solution(const Surface& surf, const BjorlingStrip& strip, double tol) {
  BjorlingStrip copy = strip;
  validate_strip(copy, tol);
  ParamCurve pc = param_curve(copy, tol);
  const std::size_t n = pc.t.size();

  std::vector<double> rs = pc.r, ss = pc.s;
  std::vector<std::size_t> ri(n), si(n);
  for (std::size_t i = 0; i < n; ++i) ri[i] = si[i] = i;
  std::sort(ri.begin(), ri.end(), [&](std::size_t a, std::size_t b) { return rs[a] < rs[b]; });
  std::sort(si.begin(), si.end(), [&](std::size_t a, std::size_t b) { return ss[a] < ss[b]; });
  std::vector<double> rs_sorted(n), ss_sorted(n);
  std::vector<std::size_t> rpos(n), spos(n);
  for (std::size_t i = 0; i < n; ++i) {
    rs_sorted[i] = rs[ri[i]];
    rpos[ri[i]] = i;
    ss_sorted[i] = ss[si[i]];
    spos[si[i]] = i;
  }

  GridEvaluator g(surf, rs_sorted, ss_sorted);
  SolutionResidual res;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 X = g.at(rpos[i], spos[i]);
    res.curve_sup = std::max(res.curve_sup, sup_norm(X - copy.samples[i].c));
    const Vec3 N = surf.unit_normal({pc.r[i], pc.s[i]}, tol);
    const double d = std::min(sup_norm(N - copy.samples[i].n), sup_norm(N + copy.samples[i].n));
    res.normal_sup = std::max(res.normal_sup, d);
  }
  return res;
}

}  // namespace bis
