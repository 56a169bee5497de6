#include "qjm/approximation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qjm/detail/ellipse.hpp"
#include "qjm/detail/parallel.hpp"

namespace qjm {
namespace {

constexpr double kThetaSlack = 1e-12;

void check_theta(double theta) {
  if (!(theta > kThetaSlack) || theta > std::numbers::pi / 2 + kThetaSlack) {
    throw ParamOutOfRange("theta = " + std::to_string(theta) +
                          " outside (0, pi/2]");
  }
}

double clamp_theta(double theta) {
  return std::min(theta, std::numbers::pi / 2);
}

struct V2 {
  double x = 0.0, y = 0.0;
};
V2 operator+(V2 u, V2 v) { return {u.x + v.x, u.y + v.y}; }
V2 operator-(V2 u, V2 v) { return {u.x - v.x, u.y - v.y}; }
V2 operator*(double s, V2 v) { return {s * v.x, s * v.y}; }
double dot2(V2 u, V2 v) { return u.x * v.x + u.y * v.y; }
double norm2(V2 v) { return std::hypot(v.x, v.y); }

// The planar boundary subproblem at fixed angle theta in the canonical frame.
struct PlanarProblem {
  double theta;
  V2 n, m;
  double radius;  // 2*d1, the allowed |a - n|

  PlanarProblem(double theta_, double d1) : theta(theta_) {
    const double h = 0.5 * theta;
    n = {std::sin(h), std::cos(h)};
    m = {-std::sin(h), std::cos(h)};
    radius = 2.0 * d1;
  }

  bool a_ok(V2 a) const {
    return norm2(a - n) <= radius * (1.0 + 1e-12) + 1e-15 &&
           norm2(a) <= 1.0 + 1e-12;
  }

  // Exact inner minimum of |b - m|/2 over the spheroid section
  // |a+b| + |a-b| <= 2 (an ellipse with foci +-a), plus the argmin b.
  std::pair<double, V2> inner(V2 a) const {
    double rho = norm2(a);
    if (rho > 1.0) rho = 1.0;
    if (rho < 1e-15) {
      // Unit disk; m lies on its boundary.
      return {0.0, m};
    }
    const V2 ex = (1.0 / rho) * a;
    const V2 ey = {-ex.y, ex.x};
    const double px = dot2(m, ex);
    const double py = dot2(m, ey);
    const double e1 = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    const auto proj = detail::project_to_ellipse_region(1.0, e1, px, py);
    const V2 b = proj.qx * ex + proj.qy * ey;
    return {0.5 * proj.distance, b};
  }
};

struct Incumbent {
  double value = std::numeric_limits<double>::infinity();
  V2 a, b;

  void offer(double v, V2 a_, V2 b_) {
    if (v < value) {
      value = v;
      a = a_;
      b = b_;
    }
  }
};

// Clamp a into the disk (and the unit disk), then re-solve the inner problem
// exactly so the candidate is certainly admissible.
void offer_cleaned(const PlanarProblem& prob, V2 a, Incumbent& inc) {
  V2 d = a - prob.n;
  const double nd = norm2(d);
  if (nd > prob.radius) {
    a = prob.n + (prob.radius / (nd + 1e-300)) * d;
  }
  const double na = norm2(a);
  if (na > 1.0) a = (1.0 / na) * a;
  if (!prob.a_ok(a)) return;
  const auto [v, b] = prob.inner(a);
  inc.offer(v, a, b);
}

// Derivative-free simplex descent on all four planar coordinates with an
// exact penalty for the two constraints.
void nelder_mead_polish(const PlanarProblem& prob, V2 a0, V2 b0, double tol,
                        Incumbent& inc) {
  constexpr double kPenalty = 8.0;
  using X = std::array<double, 4>;
  auto objective = [&prob](const X& x) {
    const V2 a{x[0], x[1]};
    const V2 b{x[2], x[3]};
    const double jm =
        std::max(0.0, norm2(a + b) + norm2(a - b) - 2.0);
    const double disk = std::max(0.0, norm2(a - prob.n) - prob.radius);
    return 0.5 * norm2(b - prob.m) + kPenalty * (jm + disk);
  };

  std::array<X, 5> xs;
  std::array<double, 5> fs;
  const double h = std::max(prob.radius / 32.0, 1e-3);
  xs[0] = {a0.x, a0.y, b0.x, b0.y};
  for (int i = 1; i < 5; ++i) {
    xs[i] = xs[0];
    xs[i][i - 1] += h;
  }
  for (int i = 0; i < 5; ++i) fs[i] = objective(xs[i]);

  const int max_iter = 1200;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::array<int, 5> idx = {0, 1, 2, 3, 4};
    std::sort(idx.begin(), idx.end(),
              [&fs](int l, int r) { return fs[l] < fs[r]; });
    std::array<X, 5> xs2;
    std::array<double, 5> fs2;
    for (int i = 0; i < 5; ++i) {
      xs2[i] = xs[idx[i]];
      fs2[i] = fs[idx[i]];
    }
    xs = xs2;
    fs = fs2;

    double spread = 0.0;
    for (int i = 0; i < 4; ++i) {
      spread = std::max(spread, std::abs(xs[4][i] - xs[0][i]));
    }
    if (spread < 0.05 * tol && fs[4] - fs[0] < 0.05 * tol) break;

    X centroid{};
    for (int i = 0; i < 4; ++i) {
      for (int d = 0; d < 4; ++d) centroid[d] += xs[i][d] / 4.0;
    }
    auto blend = [&centroid](const X& x, double c) {
      X r;
      for (int d = 0; d < 4; ++d) r[d] = centroid[d] + c * (x[d] - centroid[d]);
      return r;
    };
    const X refl = blend(xs[4], -1.0);
    const double frefl = objective(refl);
    if (frefl < fs[0]) {
      const X expa = blend(xs[4], -2.0);
      const double fexpa = objective(expa);
      if (fexpa < frefl) {
        xs[4] = expa;
        fs[4] = fexpa;
      } else {
        xs[4] = refl;
        fs[4] = frefl;
      }
    } else if (frefl < fs[3]) {
      xs[4] = refl;
      fs[4] = frefl;
    } else {
      const X contr = blend(xs[4], frefl < fs[4] ? -0.5 : 0.5);
      const double fcontr = objective(contr);
      if (fcontr < std::min(fs[4], frefl)) {
        xs[4] = contr;
        fs[4] = fcontr;
      } else {
        for (int i = 1; i < 5; ++i) {
          for (int d = 0; d < 4; ++d) {
            xs[i][d] = xs[0][d] + 0.5 * (xs[i][d] - xs[0][d]);
          }
          fs[i] = objective(xs[i]);
        }
      }
    }
  }
  const int best =
      static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  offer_cleaned(prob, {xs[best][0], xs[best][1]}, inc);
}

// 1-D refinement along the active disk boundary a = n + radius * u(phi).
void arc_refine(const PlanarProblem& prob, Incumbent& inc) {
  if (prob.radius <= 0.0 || inc.value <= 1e-12) return;
  auto value_at = [&prob](double phi) {
    const V2 a = prob.n + prob.radius * V2{std::cos(phi), std::sin(phi)};
    if (norm2(a) > 1.0) return std::numeric_limits<double>::infinity();
    return prob.inner(a).first;
  };
  const V2 d = inc.a - prob.n;
  if (norm2(d) < 0.5 * prob.radius) return;  // interior optimum; keep as is
  double lo = std::atan2(d.y, d.x) - 0.5;
  double hi = lo + 1.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  for (int i = 0; i < 160; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = value_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = value_at(x2);
    }
  }
  const double phi = 0.5 * (lo + hi);
  const V2 a = prob.n + prob.radius * V2{std::cos(phi), std::sin(phi)};
  offer_cleaned(prob, a, inc);
}

}  // namespace

TargetPair TargetPair::from_axes(const UnitVector3& n, const UnitVector3& m) {
  const double c = dot(n.vec(), m.vec());
  const double s = norm(cross(n.vec(), m.vec()));
  const double theta = std::atan2(s, c);
  check_theta(theta);
  return {n, m, clamp_theta(theta)};
}

TargetPair TargetPair::from_angle(double theta) {
  check_theta(theta);
  theta = clamp_theta(theta);
  const double h = 0.5 * theta;
  return {UnitVector3::from({std::sin(h), std::cos(h), 0.0}),
          UnitVector3::from({-std::sin(h), std::cos(h), 0.0}), theta};
}

double d0(double theta) {
  check_theta(theta);
  theta = clamp_theta(theta);
  const double h = 0.5 * theta;
  return 0.5 * (std::cos(h) + std::sin(h) - 1.0) / std::numbers::sqrt2;
}

double d0_coarse(double theta) {
  check_theta(theta);
  theta = clamp_theta(theta);
  // sqrt(1 - sin t)/cos t == 1/(cos(t/2) + sin(t/2)) on (0, pi/2]; the right
  // side has no cancellation at t -> pi/2.
  const double h = 0.5 * theta;
  return 0.5 * (1.0 - 1.0 / (std::cos(h) + std::sin(h)));
}

double axis_intercept(double theta) {
  check_theta(theta);
  return 0.5 * std::sin(clamp_theta(theta));
}

double tradeoff_margin(const SimpleObservable& o1, const SimpleObservable& o2,
                       const TargetPair& target, bool check_jm) {
  if (check_jm) {
    const JmVerdict v = decide_jm(o1, o2);
    if (v.status == JmStatus::NotJointlyMeasurable) {
      throw NotJointlyMeasurableError(
          "tradeoff_margin: the approximating pair is not jointly "
          "measurable (margin " +
          std::to_string(v.margin) + ")");
    }
  }
  return distance(o1, sharp_observable(target.n)) +
         distance(o2, sharp_observable(target.m)) - 2.0 * d0(target.theta);
}

std::pair<SimpleObservable, SimpleObservable> project_pair_to_plane(
    const SimpleObservable& o1, const SimpleObservable& o2,
    const TargetPair& target) {
  const Vec3& n = target.n.vec();
  const Vec3& m = target.m.vec();
  const Vec3 e2raw = m - dot(m, n) * n;
  if (norm(e2raw) < kDegenerateNorm) {
    throw DegenerateTargets("project_pair_to_plane: n and m are collinear");
  }
  const Vec3 e2 = UnitVector3::normalized(e2raw).vec();
  auto project = [&n, &e2](const Vec3& v) {
    return dot(v, n) * n + dot(v, e2) * e2;
  };
  return {make_observable(1.0, project(o1.plus.a)),
          make_observable(1.0, project(o2.plus.a))};
}

std::pair<SimpleObservable, SimpleObservable> swap_realization(
    const SimpleObservable& o1, const SimpleObservable& o2,
    const TargetPair& target) {
  const Vec3& n = target.n.vec();
  const Vec3& m = target.m.vec();
  const Vec3 axis = cross(n, m);
  if (norm(axis) < kDegenerateNorm || norm(n + m) < kDegenerateNorm) {
    throw DegenerateTargets("swap_realization: n and m are collinear");
  }
  // Reflection across the bisector plane span{n+m, n x m}; it exchanges the
  // two targets, so reflecting the configuration swaps the realized
  // distances.
  const Vec3 w = UnitVector3::normalized(n + m).vec();
  const Vec3 u = UnitVector3::normalized(axis).vec();
  const Vec3 q = cross(u, w);
  auto reflect = [&q](const Vec3& v) { return v - 2.0 * dot(v, q) * q; };
  return {make_observable(o2.plus.alpha, reflect(o2.plus.a)),
          make_observable(o1.plus.alpha, reflect(o1.plus.a))};
}

MinD2Solution solve_min_d2(const TargetPair& target, double d1,
                           const BoundaryOptions& opts) {
  if (!(d1 >= 0.0 && d1 <= 0.5)) {
    throw ParamOutOfRange("min_d2_given_d1: d1 = " + std::to_string(d1) +
                          " outside [0, 1/2]");
  }
  if (opts.grid < 2) {
    throw ParamOutOfRange("min_d2_given_d1: stage-1 grid must be >= 2");
  }
  const PlanarProblem prob(target.theta, d1);
  Incumbent inc;

  // Closed-form candidates: the target itself and the best collinear-with-m
  // approximator (exact at both curve endpoints).
  offer_cleaned(prob, prob.n, inc);
  offer_cleaned(prob, std::cos(target.theta) * prob.m, inc);

  // Stage 1: dense grid over the admissible disk for a, exact inner solve.
  std::array<Incumbent, 3> top;
  if (prob.radius > 0.0) {
    const int g = opts.grid;
    for (int i = 0; i < g; ++i) {
      const double ax =
          prob.n.x - prob.radius +
          2.0 * prob.radius * static_cast<double>(i) / (g - 1);
      for (int j = 0; j < g; ++j) {
        const double ay =
            prob.n.y - prob.radius +
            2.0 * prob.radius * static_cast<double>(j) / (g - 1);
        const V2 a{ax, ay};
        if (!prob.a_ok(a)) continue;
        const auto [v, b] = prob.inner(a);
        inc.offer(v, a, b);
        for (Incumbent& slot : top) {
          if (v < slot.value) {
            slot.offer(v, a, b);
            break;
          }
        }
      }
    }
  } else {
    top[0] = inc;
  }

  // Stage 2: simplex polish from the best grid basins plus seeded jitters.
  for (const Incumbent& start : top) {
    if (!std::isfinite(start.value)) continue;
    nelder_mead_polish(prob, start.a, start.b, opts.tol, inc);
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (int r = 0; r < opts.polish_restarts; ++r) {
    const double scale = std::max(prob.radius / 8.0, 1e-3);
    const V2 a{inc.a.x + scale * jitter(rng), inc.a.y + scale * jitter(rng)};
    const V2 b{inc.b.x + scale * jitter(rng), inc.b.y + scale * jitter(rng)};
    nelder_mead_polish(prob, a, b, opts.tol, inc);
  }

  // Stage 3: the disk constraint is active away from the flat tail, so a 1-D
  // search along its boundary sharpens the optimum to solver precision.
  arc_refine(prob, inc);

  if (!std::isfinite(inc.value)) {
    throw SolverDidNotConverge("min_d2_given_d1: no admissible candidate");
  }
  return {inc.value, inc.a.x, inc.a.y, inc.b.x, inc.b.y};
}

double min_d2_given_d1(const TargetPair& target, double d1,
                       const BoundaryOptions& opts) {
  return solve_min_d2(target, d1, opts).d2min;
}

BoundaryCurve boundary_curve(const TargetPair& target, int grid,
                             const BoundaryOptions& opts) {
  if (grid < 2) {
    throw ParamOutOfRange("boundary_curve: grid must be >= 2");
  }
  const double d1_max = axis_intercept(target.theta);
  std::vector<BoundarySample> samples(grid);
  detail::parallel_for(samples.size(), opts.jobs, [&](std::size_t i) {
    const double d1 =
        d1_max * static_cast<double>(i) / static_cast<double>(grid - 1);
    const MinD2Solution sol = solve_min_d2(target, d1, opts);
    samples[i] = {d1, sol.d2min, sol.ax, sol.ay, sol.bx, sol.by};
  });

  BoundaryDiagnostics diag{0.0, std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
  for (std::size_t i = 1; i < samples.size(); ++i) {
    diag.max_monotone_violation =
        std::max(diag.max_monotone_violation,
                 samples[i].d2min - samples[i - 1].d2min);
    if (samples[i].d2min > samples[i - 1].d2min) {
      // The earlier witness is feasible at the larger d1 budget as well.
      samples[i].d2min = samples[i - 1].d2min;
      samples[i].ax = samples[i - 1].ax;
      samples[i].ay = samples[i - 1].ay;
      samples[i].bx = samples[i - 1].bx;
      samples[i].by = samples[i - 1].by;
    }
  }
  const double two_d0 = 2.0 * d0(target.theta);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    diag.min_line_margin = std::min(
        diag.min_line_margin, samples[i].d1 + samples[i].d2min - two_d0);
    if (i + 1 < samples.size() && i > 0) {
      diag.min_second_difference =
          std::min(diag.min_second_difference,
                   samples[i - 1].d2min - 2.0 * samples[i].d2min +
                       samples[i + 1].d2min);
    }
  }
  return {target.theta, std::move(samples), opts.grid, opts.tol, diag};
}

}  // namespace qjm
