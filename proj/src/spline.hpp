#pragma once

#include <vector>

#include "error.hpp"

namespace bis {

// Natural cubic spline through (x_i, y_i), x strictly increasing.
// Outside [x_front, x_back] evaluation clamps to the boundary value and the
// derivative to the boundary derivative; callers needing a different
// extension handle it themselves.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double deriv(double x) const;

  // Exact integral of the piecewise cubic from x_front to each knot.
  std::vector<double> knot_integrals() const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  bool valid() const { return !x_.empty(); }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

}  // namespace bis
