#include "quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bis {

namespace {

// 15-point Kronrod nodes on [-1,1] (symmetric; last is the center) with the
// Kronrod weights, and the embedded 7-point Gauss weights on the odd nodes.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0,
};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776,
};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const RealFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  PanelResult r;
  r.kronrod = resk * h;
  const double diff = std::fabs((resk - resg) * h);
  const double scaled = 200.0 * diff;
  r.err = scaled < 1.0 ? scaled * std::sqrt(scaled) : scaled;
  return r;
}

double integrate_ascending(const RealFn& f, double a, double b, const QuadOptions& opts) {
  struct Seg {
    double a, b;
  };
  const double total = b - a;
  std::vector<Seg> stack{{a, b}};
  double sum = 0.0;
  int splits = 0;
  while (!stack.empty()) {
    const Seg seg = stack.back();
    stack.pop_back();
    const PanelResult pr = gk15(f, seg.a, seg.b);
    const double local_tol =
        std::max(opts.abs_tol * (seg.b - seg.a) / total, opts.rel_tol * std::fabs(pr.kronrod));
    if (pr.err <= local_tol || (seg.b - seg.a) <= 1e-14 * std::max(1.0, std::fabs(seg.a))) {
      sum += pr.kronrod;
      continue;
    }
    if (++splits > opts.max_subdivisions)
      throw Error(ErrorCode::QuadratureNonConvergence,
                  "quadrature failed to converge on [" + std::to_string(seg.a) + ", " +
                      std::to_string(seg.b) + "] after " + std::to_string(opts.max_subdivisions) +
                      " subdivisions");
    const double m = 0.5 * (seg.a + seg.b);
    stack.push_back({m, seg.b});
    stack.push_back({seg.a, m});
  }
  return sum;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, const QuadOptions& opts) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_ascending(f, b, a, opts);
  return integrate_ascending(f, a, b, opts);
}

std::vector<double> chained_antiderivative(const RealFn& f, double anchor,
                                           const std::vector<double>& xs,
                                           const QuadOptions& opts) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] <= xs[i]))
      throw Error(ErrorCode::InvalidArgument, "chained_antiderivative: coordinates not sorted");

  std::vector<double> out(xs.size(), 0.0);
  const auto split = std::lower_bound(xs.begin(), xs.end(), anchor) - xs.begin();

  double acc = 0.0;
  double prev = anchor;
  for (std::size_t i = static_cast<std::size_t>(split); i < xs.size(); ++i) {
    acc += integrate(f, prev, xs[i], opts);
    out[i] = acc;
    prev = xs[i];
  }
  acc = 0.0;
  prev = anchor;
  for (std::size_t i = static_cast<std::size_t>(split); i-- > 0;) {
    acc -= integrate(f, xs[i], prev, opts);
    out[i] = acc;
    prev = xs[i];
  }
  return out;
}

}  // namespace bis
