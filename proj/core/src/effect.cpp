#include "qjm/effect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qjm {

UnitVector3 UnitVector3::from(const Vec3& v) {
  const double r = norm(v);
  if (std::abs(r - 1.0) > 1e-12) {
    throw ParamOutOfRange("UnitVector3: norm " + std::to_string(r) +
                          " is not 1 within 1e-12");
  }
  return UnitVector3({v.x / r, v.y / r, v.z / r});
}

UnitVector3 UnitVector3::normalized(const Vec3& v) {
  const double r = norm(v);
  if (r < kDegenerateNorm) {
    throw DegenerateAxis("UnitVector3: cannot normalize a near-zero vector");
  }
  return UnitVector3({v.x / r, v.y / r, v.z / r});
}

double effect_deficit(double alpha, const Vec3& a) {
  const double r = norm(a);
  return 0.5 * std::min(alpha - r, 2.0 - alpha - r);
}

bool is_effect(double alpha, const Vec3& a, double tol) {
  return effect_deficit(alpha, a) >= -tol;
}

Effect make_effect(double alpha, const Vec3& a) {
  const double deficit = effect_deficit(alpha, a);
  if (deficit < -kEffectTol) {
    throw NotAnEffect("make_effect: eigenvalue bound violated by " +
                          std::to_string(-deficit),
                      deficit);
  }
  if (deficit >= 0.0) return {alpha, a};
  // Within tolerance of the boundary: clamp onto the valid set.
  const double alpha_c = std::clamp(alpha, 0.0, 2.0);
  const double rmax = std::min(alpha_c, 2.0 - alpha_c);
  const double r = norm(a);
  if (r <= rmax) return {alpha_c, a};
  const double s = rmax / r;
  return {alpha_c, s * a};
}

SimpleObservable sharp_observable(const UnitVector3& n) {
  return {Effect{1.0, n.vec()}};
}

Effect complement(const Effect& e) { return {2.0 - e.alpha, -e.a}; }

std::pair<double, double> eigenvalues(const Effect& e) {
  const double r = norm(e.a);
  return {0.5 * (e.alpha - r), 0.5 * (e.alpha + r)};
}

SpectralDecomposition spectral_decomposition(const Effect& e) {
  const double r = norm(e.a);
  if (r < kDegenerateNorm) {
    throw DegenerateAxis("spectral_decomposition: axis undefined for a = 0");
  }
  return {0.5 * (e.alpha + r), 0.5 * (e.alpha - r),
          UnitVector3::normalized(e.a)};
}

double commutator_norm(const Effect& e, const Effect& f) {
  return 0.5 * norm(cross(e.a, f.a));
}

Effect reflect_effect(const Effect& e, const UnitVector3& u) {
  const Vec3& ax = u.vec();
  return {e.alpha, 2.0 * dot(ax, e.a) * ax - e.a};
}

SimpleObservable mix_observables(const SimpleObservable& o1,
                                 const SimpleObservable& o2, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ParamOutOfRange("mix_observables: t = " + std::to_string(t) +
                          " outside [0, 1]");
  }
  return {Effect{t * o1.plus.alpha + (1.0 - t) * o2.plus.alpha,
                 t * o1.plus.a + (1.0 - t) * o2.plus.a}};
}

}  // namespace qjm
