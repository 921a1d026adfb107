#pragma once

#include <array>
#include <memory>
#include <optional>

#include "spline.hpp"
#include "strip.hpp"
#include "surface.hpp"

namespace bis {

enum class ExtendPolicy { Constant, Taper };

// Generating data recovered from a Björling strip: F' sampled along r(t) and
// G' along s(t), splined over I1 = range(r), I2 = range(s), and extended to
// the whole line.  The default extension holds the boundary value constant;
// the taper policy blends the boundary slope to zero over a given width
// (clamped so the extension cannot cross zero) and is constant beyond.
class ReconstructedFG {
 public:
  double fprime(double x) const;
  double gprime(double x) const;
  // F(x) - F(anchor_r), G(x) - G(anchor_s) by integration of the extended
  // derivative.
  double fvalue(double x) const;
  double gvalue(double x) const;

  std::array<double, 2> I1() const { return {fp_.x_front(), fp_.x_back()}; }
  std::array<double, 2> I2() const { return {gp_.x_front(), gp_.x_back()}; }

  const ParamCurve& curve() const { return pc_; }
  // Knot tables aligned with I1/I2 (sorted by r resp. s).
  const std::vector<double>& r_knots() const { return r_knots_; }
  const std::vector<double>& fprime_knots() const { return fp_knots_; }
  std::vector<double> f_knots() const;  // F - F(anchor_r) at the knots
  const std::vector<double>& s_knots() const { return s_knots_; }
  const std::vector<double>& gprime_knots() const { return gp_knots_; }
  std::vector<double> g_knots() const;

  ParamPoint anchor_param() const { return anchor_; }
  Vec3 anchor_value() const { return anchor_value_; }

  void set_extension(ExtendPolicy policy, double width);
  ExtendPolicy extension() const { return policy_; }

  // Mollifier bump f supported in (lo, hi), added to F (so f' is added to
  // F'); the amplitude is clamped so that max |f'| <= inf_J |F'| / 2.
  // (lo, hi) must avoid a neighborhood of I1.
  ReconstructedFG perturbed(double lo, double hi, double amplitude) const;
  double bump_amplitude() const { return bump_ ? bump_->amplitude : 0.0; }
  bool has_bump() const { return bump_.has_value(); }
  double bump_value(double x) const;

  // The Björling solution: the surface with these generating data anchored at
  // (r(a), s(a)) -> c(a).
  Surface make_surface(QuadOptions quad = {}) const;

  friend ReconstructedFG reconstruct_fg(const BjorlingStrip&, double, double);

 private:
  struct Bump {
    double lo = 0.0, hi = 0.0, amplitude = 0.0;
    double value(double x) const;
    double deriv(double x) const;
  };

  double extended_deriv(const CubicSpline& sp, double x) const;

  CubicSpline fp_, gp_;
  std::vector<double> r_knots_, fp_knots_, s_knots_, gp_knots_;
  ParamCurve pc_;
  ParamPoint anchor_;
  Vec3 anchor_value_;
  ExtendPolicy policy_ = ExtendPolicy::Constant;
  double taper_width_ = 1.0;
  std::optional<Bump> bump_;
  QuadOptions quad_;
};

// Approach-2 reconstruction: maps the strip through the normal inversion to
// (r(t), s(t)) and solves the tangency system for F'(r(t)), G'(s(t)):
//   F'(r) = (s^2 (c1'+c2') + (c1'-c2')) / ((1 - r^2 s^2) r')
//   G'(s) = ((c1'+c2') + r^2 (c1'-c2')) / ((1 - r^2 s^2) s')
// then checks the remaining equation c3' = r F' r' + s G' s' for consistency.
ReconstructedFG reconstruct_fg(const BjorlingStrip& strip, double consistency_tol = 1e-6,
                               double tol = 1e-8);

struct SolutionResidual {
  double curve_sup = 0.0;   // max_t |X(r(t),s(t)) - c(t)|_inf
  double normal_sup = 0.0;  // max_t min(|N - n|_inf, |N + n|_inf)
};

SolutionResidual verify_solution(const Surface& surf, const BjorlingStrip& strip,
                                 double tol = 1e-8);

}  // namespace bis
