#include "splitcomplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bis {

SplitComplex sc_div(SplitComplex x, SplitComplex y) {
  const double q = sc_norm(y);
  if (q == 0.0)
    throw Error(ErrorCode::DomainError, "split-complex division by a zero divisor");
  const SplitComplex num = sc_mul(x, sc_conj(y));
  return {num.a / q, num.b / q};
}

SplitComplex sc_extend(const std::function<double(double)>& f, SplitComplex z) {
  const double fp = f(z.a + z.b);
  const double fm = f(z.a - z.b);
  return {0.5 * (fp + fm), 0.5 * (fp - fm)};
}

TmsSolution::TmsSolution(std::array<Expr, 3> c, std::array<Expr, 3> n, double a, double b,
                         double t0, QuadOptions quad, int check_samples, double tol)
    : c_(std::move(c)),
      cdot_{c_[0].derivative(), c_[1].derivative(), c_[2].derivative()},
      n_(std::move(n)),
      a_(a),
      b_(b),
      t0_(t0),
      quad_(quad) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "need t_min < t_max");
  if (t0 < a || t0 > b) throw Error(ErrorCode::InvalidArgument, "t0 must lie in [t_min, t_max]");
  if (check_samples < 3) check_samples = 3;

  bool timelike = false, spacelike = false;
  double worst_unit = 0.0, worst_orth = 0.0;
  for (int i = 0; i < check_samples; ++i) {
    const double t = a + (b - a) * i / (check_samples - 1);
    const Vec3 cd = curve_deriv(t);
    const Vec3 nv = normal_field(t);
    worst_unit = std::max(worst_unit, std::fabs(inner(nv, nv, Signature::L3) - 1.0));
    worst_orth = std::max(worst_orth, std::fabs(inner(nv, cd, Signature::L3)));
    const double q = inner(cd, cd, Signature::L3);
    if (q > tol) spacelike = true;
    else if (q < -tol) timelike = true;
    else throw Error(ErrorCode::MixedCausalCharacter,
                     "curve derivative is lightlike (within tolerance) at t = " + format_double(t));
  }
  if (worst_unit > tol)
    throw Error(ErrorCode::NotUnitNormal,
                "normal field is not L3-unit (worst defect " + format_double(worst_unit) + ")");
  if (worst_orth > tol)
    throw Error(ErrorCode::NotOrthogonal,
                "normal field is not orthogonal to the curve (worst " + format_double(worst_orth) + ")");
  if (timelike && spacelike)
    throw Error(ErrorCode::MixedCausalCharacter, "curve derivative changes causal character");
  character_ = timelike ? CausalType::Timelike : CausalType::Spacelike;
}

Vec3 TmsSolution::curve(double t) const {
  return {c_[0].eval(t), c_[1].eval(t), c_[2].eval(t)};
}

Vec3 TmsSolution::curve_deriv(double t) const {
  return {cdot_[0].eval(t), cdot_[1].eval(t), cdot_[2].eval(t)};
}

Vec3 TmsSolution::normal_field(double t) const {
  return {n_[0].eval(t), n_[1].eval(t), n_[2].eval(t)};
}

Vec3 TmsSolution::integral_to(double x) const {
  auto integrand = [this](double xi, int comp) {
    const Vec3 g = cross(normal_field(xi), curve_deriv(xi), Signature::L3);
    return g[comp];
  };
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;

  // Integrate from the nearest cached argument (or t0).
  double from = t0_;
  Vec3 base{};
  if (!cache_.empty()) {
    auto hi = cache_.lower_bound(x);
    const std::map<double, Vec3>::const_iterator cands[2] = {
        hi == cache_.end() ? std::prev(hi) : hi,
        hi == cache_.begin() ? hi : std::prev(hi)};
    double best = std::fabs(x - t0_);
    for (const auto& c : cands) {
      if (std::fabs(x - c->first) < best) {
        best = std::fabs(x - c->first);
        from = c->first;
        base = c->second;
      }
    }
  }
  Vec3 val = base;
  for (int comp = 0; comp < 3; ++comp)
    val[comp] += integrate([&](double xi) { return integrand(xi, comp); }, from, x, quad_);
  cache_.emplace(x, val);
  return val;
}

Vec3 TmsSolution::eval(double t, double s) const {
  const double p = t + s;
  const double m = character_ == CausalType::Timelike ? t - s : s - t;
  const Vec3 cp = curve(p), cm = curve(m);
  const Vec3 Ap = integral_to(p), Am = integral_to(m);
  return 0.5 * (cp + cm) + 0.5 * (Ap - Am);
}

JacobianReport gale_nikaido_check(const std::function<Vec3(double, double)>& X,
                                  double t_lo, double t_hi, double s_lo, double s_hi,
                                  int nt, int ns, int comp_a, int comp_b,
                                  double fd_step, double tol) {
  if (comp_a < 1 || comp_a > 3 || comp_b < 1 || comp_b > 3 || comp_a == comp_b)
    throw Error(ErrorCode::InvalidArgument, "component pair must be distinct members of {1,2,3}");
  if (nt < 2 || ns < 2) throw Error(ErrorCode::InvalidArgument, "need at least a 2x2 grid");
  const int ca = comp_a - 1, cb = comp_b - 1;
  const double h = fd_step;

  JacobianReport rep;
  rep.note = "sampled evidence on a finite grid, not a proof";
  rep.min_abs_j11 = rep.min_abs_j22 = rep.min_abs_det = std::numeric_limits<double>::infinity();
  rep.criterion_i = true;
  rep.criterion_ii = true;
  bool det_never_zero = true;
  bool diag_zero_seen = false;
  int sign_j11 = 0, sign_j22 = 0, sign_det = 0;  // first nonzero sign seen

  auto signum = [tol](double v) { return std::fabs(v) <= tol ? 0 : (v > 0 ? 1 : -1); };

  for (int i = 0; i < nt; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (nt - 1);
    for (int j = 0; j < ns; ++j) {
      const double s = s_lo + (s_hi - s_lo) * j / (ns - 1);
      const Vec3 xp = X(t + h, s), xm = X(t - h, s);
      const Vec3 yp = X(t, s + h), ym = X(t, s - h);
      JacobianSample smp;
      smp.t = t;
      smp.s = s;
      smp.j11 = (xp[ca] - xm[ca]) / (2.0 * h);
      smp.j12 = (yp[ca] - ym[ca]) / (2.0 * h);
      smp.j21 = (xp[cb] - xm[cb]) / (2.0 * h);
      smp.j22 = (yp[cb] - ym[cb]) / (2.0 * h);
      smp.det = smp.j11 * smp.j22 - smp.j12 * smp.j21;
      rep.samples.push_back(smp);

      rep.min_abs_j11 = std::min(rep.min_abs_j11, std::fabs(smp.j11));
      rep.min_abs_j22 = std::min(rep.min_abs_j22, std::fabs(smp.j22));
      rep.min_abs_det = std::min(rep.min_abs_det, std::fabs(smp.det));

      const int s11 = signum(smp.j11), s22 = signum(smp.j22), sdet = signum(smp.det);
      if (sign_j11 == 0) sign_j11 = s11;
      if (sign_j22 == 0) sign_j22 = s22;
      if (sign_det == 0) sign_det = sdet;
      if (sdet == 0) det_never_zero = false;
      if (s11 == 0 || s22 == 0) diag_zero_seen = true;

      const bool diag_steady = s11 != 0 && s22 != 0 && s11 == sign_j11 && s22 == sign_j22;
      const bool i_ok = diag_steady && sdet != 0 && sdet == sign_det;
      const bool ii_ok = diag_steady && sdet != 0;
      if (!i_ok && rep.criterion_i) {
        rep.criterion_i = false;
        rep.witness_i = smp;
      }
      if (!ii_ok && rep.criterion_ii) {
        rep.criterion_ii = false;
        rep.witness_ii = smp;
      }
    }
  }
  rep.zero_diag_ambiguity = det_never_zero && diag_zero_seen;
  return rep;
}

}  // namespace bis
