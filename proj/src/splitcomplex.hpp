#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "expr.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "surface.hpp"

namespace bis {

// a + k'b with k'^2 = 1.  Zero divisors along a = +-b.
struct SplitComplex {
  double a = 0.0, b = 0.0;
};

inline SplitComplex sc_add(SplitComplex x, SplitComplex y) { return {x.a + y.a, x.b + y.b}; }
inline SplitComplex sc_sub(SplitComplex x, SplitComplex y) { return {x.a - y.a, x.b - y.b}; }
inline SplitComplex sc_mul(SplitComplex x, SplitComplex y) {
  return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
}
inline SplitComplex sc_conj(SplitComplex x) { return {x.a, -x.b}; }
// The square of the split modulus, a^2 - b^2 (sign carries causal character).
inline double sc_norm(SplitComplex x) { return x.a * x.a - x.b * x.b; }
SplitComplex sc_div(SplitComplex x, SplitComplex y);

// Split-holomorphic extension of a real-analytic function along null
// coordinates: f(a + k'b) = (f(a+b)+f(a-b))/2 + k' (f(a+b)-f(a-b))/2.
SplitComplex sc_extend(const std::function<double(double)>& f, SplitComplex z);

// Timelike minimal surface through Björling data (c, n) in L3:
//   X = Re( c(w) + k' int n x c' dxi ),
// with w = z when c' is timelike (data on the axis s = 0) and w = k'z when
// c' is spacelike (data on t = 0).
class TmsSolution {
 public:
  TmsSolution(std::array<Expr, 3> c, std::array<Expr, 3> n, double a, double b,
              double t0, QuadOptions quad = {}, int check_samples = 257,
              double tol = 1e-8);

  Vec3 eval(double t, double s) const;

  CausalType curve_character() const { return character_; }
  // 0: the data curve sits on s = 0; 1: on t = 0.
  int data_axis() const { return character_ == CausalType::Timelike ? 0 : 1; }

  Vec3 curve(double t) const;
  Vec3 curve_deriv(double t) const;
  Vec3 normal_field(double t) const;

  double t_min() const { return a_; }
  double t_max() const { return b_; }
  double t0() const { return t0_; }

 private:
  Vec3 integral_to(double x) const;  // int_{t0}^x n x c' in L3

  std::array<Expr, 3> c_, cdot_, n_;
  double a_, b_, t0_;
  QuadOptions quad_;
  CausalType character_;
  mutable std::map<double, Vec3> cache_;
  mutable std::mutex mu_;
};

struct JacobianSample {
  double t = 0.0, s = 0.0;
  double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0, det = 0.0;
};

struct JacobianReport {
  bool criterion_i = false;        // J11, J22, det all nonvanishing, constant sign
  bool criterion_ii = false;       // det nonvanishing; diagonal nonvanishing, constant sign
  bool zero_diag_ambiguity = false;
  double min_abs_j11 = 0.0, min_abs_j22 = 0.0, min_abs_det = 0.0;
  JacobianSample witness_i, witness_ii;  // first failing sample, if any
  std::vector<JacobianSample> samples;
  std::string note;  // sampled evidence, not a proof
};

// Samples the Jacobian of (t,s) -> (X_a, X_b) (components 1-based) on a grid
// and evaluates the global-injectivity criteria.  Evidence is sampled, not
// a proof.
JacobianReport gale_nikaido_check(const std::function<Vec3(double, double)>& X,
                                  double t_lo, double t_hi, double s_lo, double s_hi,
                                  int nt, int ns, int comp_a, int comp_b,
                                  double fd_step = 1e-5, double tol = 1e-9);

}  // namespace bis
