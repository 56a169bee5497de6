// Robust point-to-ellipse projection via bisection on the Lagrange-multiplier
// root, after G. Eberly, "Distance from a Point to an Ellipse". The root
// function is strictly decreasing on the bracket, so ~110 bisections reach
// full double precision regardless of conditioning.

#include "qjm/detail/ellipse.hpp"

#include <algorithm>
#include <cmath>

namespace qjm::detail {
namespace {

// First-quadrant query strictly outside the ellipse, e0 >= e1 > 0.
EllipseProjection project_quadrant(double e0, double e1, double x, double y) {
  if (y > 0.0) {
    if (x > 0.0) {
      double t0 = -e1 * e1 + e1 * y;
      double t1 = -e1 * e1 + std::sqrt(e0 * e0 * x * x + e1 * e1 * y * y);
      for (int i = 0; i < 120; ++i) {
        const double t = 0.5 * (t0 + t1);
        const double r0 = e0 * x / (t + e0 * e0);
        const double r1 = e1 * y / (t + e1 * e1);
        const double f = r0 * r0 + r1 * r1 - 1.0;
        if (f > 0.0) {
          t0 = t;
        } else {
          t1 = t;
        }
      }
      const double t = 0.5 * (t0 + t1);
      const double qx = e0 * e0 * x / (t + e0 * e0);
      const double qy = e1 * e1 * y / (t + e1 * e1);
      return {std::hypot(x - qx, y - qy), qx, qy};
    }
    return {y - e1, 0.0, e1};
  }
  // Query on the major axis.
  const double denom = e0 * e0 - e1 * e1;
  if (denom > 0.0 && e0 * x < denom) {
    const double xde = e0 * x / denom;
    const double qx = e0 * xde;
    const double qy = e1 * std::sqrt(std::max(0.0, 1.0 - xde * xde));
    return {std::hypot(qx - x, qy), qx, qy};
  }
  return {std::abs(x - e0), e0, 0.0};
}

}  // namespace

EllipseProjection project_to_ellipse_region(double e0, double e1, double px,
                                            double py) {
  if (e1 <= 1e-14) {
    // Degenerate segment [-e0, e0] x {0}.
    const double qx = std::clamp(px, -e0, e0);
    return {std::hypot(px - qx, py), qx, 0.0};
  }
  const double u = px / e0;
  const double v = py / e1;
  if (u * u + v * v <= 1.0) return {0.0, px, py};

  if (std::abs(e0 - e1) < 1e-15) {  // disk
    const double r = std::hypot(px, py);
    const double s = e0 / r;
    return {r - e0, s * px, s * py};
  }

  const double x = std::abs(px);
  const double y = std::abs(py);
  EllipseProjection p = project_quadrant(e0, e1, x, y);
  if (px < 0.0) p.qx = -p.qx;
  if (py < 0.0) p.qy = -p.qy;
  return p;
}

}  // namespace qjm::detail
