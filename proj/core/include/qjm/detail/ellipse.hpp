#pragma once

namespace qjm::detail {

/// Closest point of the filled axis-aligned ellipse {(x/e0)^2 + (y/e1)^2 <= 1}
/// to the query point; `distance` is 0 for interior queries. Handles the
/// degenerate cases e1 = 0 (a segment) and e0 = e1 (a disk). Requires
/// e0 >= e1 >= 0.
struct EllipseProjection {
  double distance;
  double qx;
  double qy;
};

EllipseProjection project_to_ellipse_region(double e0, double e1, double px,
                                            double py);

}  // namespace qjm::detail
