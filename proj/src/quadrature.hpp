#pragma once

#include <functional>
#include <vector>

#include "error.hpp"

namespace bis {

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
};

using RealFn = std::function<double(double)>;

// Adaptive Gauss7/Kronrod15.  Antisymmetric under swapping the endpoints and
// exactly zero for a == b.  Throws QuadratureNonConvergence when the
// subdivision budget runs out; exceptions from the integrand propagate.
double integrate(const RealFn& f, double a, double b, const QuadOptions& opts = {});

// Antiderivative values int_anchor^{xs[i]} f, with the panels between
// consecutive coordinates integrated once and chained, so differences between
// nearby outputs stay coherent.  xs must be sorted ascending.
std::vector<double> chained_antiderivative(const RealFn& f, double anchor,
                                           const std::vector<double>& xs,
                                           const QuadOptions& opts = {});

}  // namespace bis
