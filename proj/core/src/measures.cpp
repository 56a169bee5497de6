#include "qjm/measures.hpp"

#include <cmath>

namespace qjm {

double spectral_width(const Effect& e) { return norm(e.a); }

double product_width(const Effect& e) {
  return norm(e.a) * std::abs(1.0 - e.alpha);
}

SharpnessReport sharpness(const SimpleObservable& o) {
  const double w = spectral_width(o.plus);
  const double pw = product_width(o.plus);
  const double s = norm(o.plus.a) * (1.0 - std::abs(1.0 - o.plus.alpha));
  return {w, pw, s, 1.0 - s * s};
}

double distance(const SimpleObservable& o1, const SimpleObservable& o2) {
  return 0.5 * norm(o1.plus.a - o2.plus.a) +
         0.5 * std::abs(o1.plus.alpha - o2.plus.alpha);
}

std::pair<double, UnitVector3> distance_to_nearest_sharp(
    const SimpleObservable& o) {
  const double r = norm(o.plus.a);
  if (r < kDegenerateNorm) {
    throw DegenerateAxis(
        "distance_to_nearest_sharp: minimizer not unique for a trivial "
        "observable");
  }
  const double d = 0.5 * (1.0 - r) + 0.5 * std::abs(1.0 - o.plus.alpha);
  return {d, UnitVector3::normalized(o.plus.a)};
}

}  // namespace qjm
