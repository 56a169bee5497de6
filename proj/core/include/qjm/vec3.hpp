#pragma once

#include <cmath>

namespace qjm {

/// Plain 3-vector of doubles. All operator algebra in this library is done in
/// these Bloch coordinates; there is no matrix type outside the oracle.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

constexpr Vec3 operator+(const Vec3& u, const Vec3& v) {
  return {u.x + v.x, u.y + v.y, u.z + v.z};
}
constexpr Vec3 operator-(const Vec3& u, const Vec3& v) {
  return {u.x - v.x, u.y - v.y, u.z - v.z};
}
constexpr Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
constexpr Vec3 operator*(double s, const Vec3& v) {
  return {s * v.x, s * v.y, s * v.z};
}
constexpr Vec3 operator*(const Vec3& v, double s) { return s * v; }

constexpr double dot(const Vec3& u, const Vec3& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}
constexpr Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
constexpr double norm_sq(const Vec3& v) { return dot(v, v); }

}  // namespace qjm
