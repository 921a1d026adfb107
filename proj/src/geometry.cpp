#include "geometry.hpp"

namespace bis {

double inner(const Vec3& u, const Vec3& v, Signature sig) {
  if (sig == Signature::B3) return u.x1 * v.x1 - u.x2 * v.x2 + u.x3 * v.x3;
  return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

Vec3 cross(const Vec3& u, const Vec3& v, Signature sig) {
  const double c1 = u.x2 * v.x3 - u.x3 * v.x2;
  const double c2 = u.x3 * v.x1 - u.x1 * v.x3;
  const double c3 = u.x1 * v.x2 - u.x2 * v.x1;
  // Components solve g_i m_i = (u x v)_i for the metric g of the signature.
  if (sig == Signature::B3) return {c1, -c2, c3};
  return {c1, c2, -c3};
}

CausalType causal_type(const Vec3& v, Signature sig, double tol) {
  const double q = inner(v, v, sig);
  if (std::fabs(q) <= tol) return CausalType::Lightlike;
  return q > 0 ? CausalType::Spacelike : CausalType::Timelike;
}

Vec3 b3_to_l3(const Vec3& p) { return {p.x3, p.x1, p.x2}; }

Vec3 l3_to_b3(const Vec3& p) { return {p.x2, p.x3, p.x1}; }

}  // namespace bis
