#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "expr.hpp"
#include "geometry.hpp"
#include "surface.hpp"

namespace bis {

// Sampled Björling data: a curve, its derivative, and a B3-unit normal field
// orthogonal to the tangent.
struct StripSample {
  double t = 0.0;
  Vec3 c, cdot, n;
};

struct BjorlingStrip {
  std::vector<StripSample> samples;
  double t_min = 0.0, t_max = 0.0;

  std::size_t size() const { return samples.size(); }
};

// CSV with header "t,c1,c2,c3,n1,n2,n3" or the extended
// "t,c1,c2,c3,n1,n2,n3,dc1,dc2,dc3".  Without dc columns the curve derivative
// is filled in by second-order finite differences of the samples.
BjorlingStrip load_strip_csv(const std::string& path);
void write_strip_csv(const BjorlingStrip& strip, const std::string& path);

// Uniform sampling of closed-form strip data; derivatives are symbolic.
BjorlingStrip strip_from_exprs(const std::array<Expr, 3>& c, const std::array<Expr, 3>& n,
                               double a, double b, int n_samples);

// Strip read off a surface along the diagonal r = s = t, with exact tangents
// and normals.
BjorlingStrip diagonal_strip(const Surface& surf, double a, double b, int n_samples);

struct StripReport {
  bool unit_ok = false;        // <n,n> = 1
  bool orthogonal_ok = false;  // <n, cdot> = 0
  bool n3_ok = false;          // n3 bounded away from 0, constant sign
  bool t_increasing = false;
  bool flipped = false;  // orientation normalization negated n
  double worst_unit = 0.0;
  double worst_orth = 0.0;
  double min_abs_n3 = 0.0;
  std::size_t worst_unit_index = 0;
  std::size_t worst_orth_index = 0;

  bool passed() const { return unit_ok && orthogonal_ok && n3_ok && t_increasing; }
};

// Validates the strip and normalizes orientation in place (if n3 > 0, the
// normal field is negated throughout).
StripReport validate_strip(BjorlingStrip& strip, double tol = 1e-8);

// The curve (r(t), s(t)) = ((n1+n2)/(1-n3), (n1-n2)/(1-n3)) after orientation
// normalization, with derivatives by spline differentiation.  `degenerate`
// flags samples where r' or s' vanishes, i.e. where the normal field fails to
// move transversally along the curve.
struct ParamCurve {
  std::vector<double> t, r, s, rdot, sdot;
  std::vector<std::uint8_t> degenerate;
};

ParamCurve param_curve(const BjorlingStrip& strip, double tol = 1e-8);

}  // namespace bis
