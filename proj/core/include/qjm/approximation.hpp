#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qjm/effect.hpp"
#include "qjm/jointness.hpp"
#include "qjm/measures.hpp"

namespace qjm {

/// A pair of noncommuting sharp observables to be approximated jointly.
/// theta = arccos(n.m) is restricted to (0, pi/2]: the commuting case is
/// rejected (no approximation problem) and orthogonality is included.
struct TargetPair {
  UnitVector3 n;
  UnitVector3 m;
  double theta;

  static TargetPair from_axes(const UnitVector3& n, const UnitVector3& m);
  /// Canonical planar frame n = (sin t/2, cos t/2, 0),
  /// m = (-sin t/2, cos t/2, 0).
  static TargetPair from_angle(double theta);
};

/// A pair of approximation distances (D1, D2) realizable by some jointly
/// measurable pair.
struct AdmissiblePoint {
  double d1;
  double d2;
};

struct BoundaryOptions {
  int grid = 96;          ///< stage-1 grid resolution per axis
  double tol = 1e-6;      ///< refinement tolerance of the polish stages
  int polish_restarts = 2;
  std::uint64_t seed = 0;
  int jobs = 1;           ///< worker threads for boundary_curve sampling
};

/// One boundary sample: the minimal D2 for the given D1 budget, together with
/// the realizing planar Bloch vectors in the canonical frame.
struct BoundarySample {
  double d1;
  double d2min;
  double ax, ay;
  double bx, by;
};

struct BoundaryDiagnostics {
  double max_monotone_violation;  ///< before the monotone repair pass
  double min_second_difference;   ///< discrete convexity of the samples
  double min_line_margin;         ///< min over samples of d1 + d2 - 2*D0
};

struct BoundaryCurve {
  double theta;
  std::vector<BoundarySample> samples;
  int grid_resolution;  ///< stage-1 grid used per sample
  double refine_tol;
  BoundaryDiagnostics diagnostics;
};

/// The symmetric optimum D0: any admissible point satisfies
/// d1 + d2 >= 2*D0 with
///   2*D0 = (cos(theta/2) + sin(theta/2) - 1) / sqrt(2),
/// and (D0, D0) itself is admissible.
double d0(double theta);

/// The smallest symmetric distance achievable by jointly measurable
/// coarse-grainings of the targets,
///   D0c = (1 - sqrt(1 - sin t) / cos t) / 2.
/// Strictly larger than d0 for theta in (0, pi/2); at theta = pi/2 the two
/// coincide and the common value is returned (the raw quotient is evaluated
/// in the cancellation-free form 1/(cos(t/2) + sin(t/2))).
double d0_coarse(double theta);

/// D2min(0) = sin(theta)/2: the best approximation of E^m jointly measurable
/// with the sharp target E^n itself.
double axis_intercept(double theta);

/// distance(O1, E^n) + distance(O2, E^m) - 2*D0(theta). Nonnegative for every
/// jointly measurable pair. With check_jm set, throws
/// NotJointlyMeasurableError if decide_jm rejects the pair.
double tradeoff_margin(const SimpleObservable& o1, const SimpleObservable& o2,
                       const TargetPair& target, bool check_jm = false);

/// Replaces (O1, O2) by the covariant pair with Bloch vectors projected onto
/// span{n, m}. Neither distance increases and joint measurability is
/// preserved.
std::pair<SimpleObservable, SimpleObservable> project_pair_to_plane(
    const SimpleObservable& o1, const SimpleObservable& o2,
    const TargetPair& target);

/// The swap construction: returns a pair realizing the reflected admissible
/// point (D2, D1), by reflecting the configuration across the bisector plane
/// of n and m (which exchanges the two targets). Joint measurability is
/// preserved.
std::pair<SimpleObservable, SimpleObservable> swap_realization(
    const SimpleObservable& o1, const SimpleObservable& o2,
    const TargetPair& target);

/// Full solution of the boundary subproblem at one d1, with witness vectors
/// in the canonical planar frame.
struct MinD2Solution {
  double d2min;
  double ax, ay;
  double bx, by;
};

MinD2Solution solve_min_d2(const TargetPair& target, double d1,
                           const BoundaryOptions& opts = {});

/// inf{ D2 : (d1, D2) admissible }, computed over planar covariant pairs
/// (justified by the plane-projection lemma): minimize |b - m|/2 over
/// |a - n|/2 <= d1 and |a+b| + |a-b| <= 2.
double min_d2_given_d1(const TargetPair& target, double d1,
                       const BoundaryOptions& opts = {});

/// Samples min_d2_given_d1 on a uniform d1 grid over [0, sin(theta)/2].
/// Monotonicity of the samples is enforced by carrying a better earlier
/// witness forward (it remains feasible at larger d1); convexity and the
/// 2*D0 line bound are reported in the diagnostics.
BoundaryCurve boundary_curve(const TargetPair& target, int grid,
                             const BoundaryOptions& opts = {});

}  // namespace qjm
