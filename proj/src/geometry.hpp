#pragma once

#include <cmath>

namespace bis {

struct Vec3 {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;

  double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
  double& operator[](int i) { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3}; }
inline Vec3 operator*(double k, const Vec3& v) { return {k * v.x1, k * v.x2, k * v.x3}; }
inline Vec3 operator*(const Vec3& v, double k) { return k * v; }
inline Vec3 operator/(const Vec3& v, double k) { return {v.x1 / k, v.x2 / k, v.x3 / k}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x1, -v.x2, -v.x3}; }

inline double sup_norm(const Vec3& v) {
  return std::max(std::fabs(v.x1), std::max(std::fabs(v.x2), std::fabs(v.x3)));
}

inline bool all_finite(const Vec3& v) {
  return std::isfinite(v.x1) && std::isfinite(v.x2) && std::isfinite(v.x3);
}

// B3: diag(+1, -1, +1).  L3: diag(+1, +1, -1).
enum class Signature { B3, L3 };

enum class CausalType { Spacelike, Timelike, Lightlike };

double inner(const Vec3& u, const Vec3& v, Signature sig);

// The signature cross product, defined by <cross(u,v), w> = det(u, v, w)
// (rows u, v, w) for every w.
Vec3 cross(const Vec3& u, const Vec3& v, Signature sig);

CausalType causal_type(const Vec3& v, Signature sig, double tol = 1e-9);

// Coordinate permutation (x, y, z) -> (z, x, y).  It carries the B3 quadratic
// form onto the L3 one: x^2 - y^2 + z^2 = z^2 + x^2 - y^2.
Vec3 b3_to_l3(const Vec3& p);
Vec3 l3_to_b3(const Vec3& p);

}  // namespace bis
