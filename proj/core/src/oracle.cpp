#include "qjm/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "qjm/detail/parallel.hpp"

namespace qjm::oracle {
namespace {

constexpr double kFeasTol = 1e-12;   // eigenvalue slack accepted as feasible
constexpr double kPrunePad = 1e-9;   // extra slack so pruning stays safe

struct GridAxis {
  std::vector<double> values;
};

GridAxis linspace(double lo, double hi, int count) {
  GridAxis axis;
  axis.values.resize(count);
  if (count == 1) {
    axis.values[0] = 0.5 * (lo + hi);
    return axis;
  }
  for (int i = 0; i < count; ++i) {
    axis.values[i] = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(count - 1);
  }
  return axis;
}

}  // namespace

HermitianMatrix2 operator+(const HermitianMatrix2& a,
                           const HermitianMatrix2& b) {
  return {a.d00 + b.d00, a.d11 + b.d11, a.re01 + b.re01, a.im01 + b.im01};
}

HermitianMatrix2 operator-(const HermitianMatrix2& a,
                           const HermitianMatrix2& b) {
  return {a.d00 - b.d00, a.d11 - b.d11, a.re01 - b.re01, a.im01 - b.im01};
}

HermitianMatrix2 operator*(double s, const HermitianMatrix2& a) {
  return {s * a.d00, s * a.d11, s * a.re01, s * a.im01};
}

HermitianMatrix2 identity_matrix() { return {1.0, 1.0, 0.0, 0.0}; }

HermitianMatrix2 effect_matrix(double alpha, const Vec3& a) {
  return {0.5 * (alpha + a.z), 0.5 * (alpha - a.z), 0.5 * a.x, -0.5 * a.y};
}

HermitianMatrix2 effect_matrix(const Effect& e) {
  return effect_matrix(e.alpha, e.a);
}

std::pair<double, double> matrix_eigenvalues(const HermitianMatrix2& m) {
  const double mean = 0.5 * (m.d00 + m.d11);
  const double half_gap = 0.5 * (m.d00 - m.d11);
  const double disc =
      std::sqrt(half_gap * half_gap + m.re01 * m.re01 + m.im01 * m.im01);
  return {mean - disc, mean + disc};
}

double min_eigenvalue(const HermitianMatrix2& m) {
  return matrix_eigenvalues(m).first;
}

double max_eigenvalue(const HermitianMatrix2& m) {
  return matrix_eigenvalues(m).second;
}

HermitianMatrix2 hermitian_square(const HermitianMatrix2& m) {
  return symmetrized_product(m, m);
}

HermitianMatrix2 symmetrized_product(const HermitianMatrix2& a,
                                     const HermitianMatrix2& b) {
  const double cross = a.re01 * b.re01 + a.im01 * b.im01;
  const double tra = a.d00 + a.d11;
  const double trb = b.d00 + b.d11;
  return {a.d00 * b.d00 + cross, a.d11 * b.d11 + cross,
          0.5 * (a.re01 * trb + b.re01 * tra),
          0.5 * (a.im01 * trb + b.im01 * tra)};
}

double operator_norm(const HermitianMatrix2& m) {
  const auto [lo, hi] = matrix_eigenvalues(m);
  return std::max(std::abs(lo), std::abs(hi));
}

double probability(const Effect& e, const BlochState& state) {
  if (norm(state.r) > 1.0 + 1e-12) {
    throw ParamOutOfRange("probability: Bloch vector norm exceeds 1");
  }
  const HermitianMatrix2 t = effect_matrix(1.0, state.r);
  const HermitianMatrix2 a = effect_matrix(e);
  // tr(T A) for Hermitian T, A.
  return t.d00 * a.d00 + t.d11 * a.d11 +
         2.0 * (t.re01 * a.re01 + t.im01 * a.im01);
}

namespace detail {

JmVerdict brute_force_jm_impl(const SimpleObservable& o1,
                              const SimpleObservable& o2, int resolution,
                              bool prune) {
  if (resolution < 8) {
    throw ParamOutOfRange("brute_force_jm: resolution must be >= 8");
  }
  const double al = o1.plus.alpha, be = o2.plus.alpha;
  const Vec3& a = o1.plus.a;
  const Vec3& b = o2.plus.a;

  const HermitianMatrix2 m1 = effect_matrix(o1.plus);
  const HermitianMatrix2 m2 = effect_matrix(o2.plus);
  const HermitianMatrix2 msum_def = m1 + m2 - identity_matrix();

  // Infeasibility of a candidate G_{++}: the worst of the four matrix
  // inequalities, as a negative smallest eigenvalue.
  auto candidate_value = [&](double gamma, const Vec3& g) {
    const HermitianMatrix2 mg = effect_matrix(gamma, g);
    const double l0 = min_eigenvalue(mg);
    const double l1 = min_eigenvalue(m1 - mg);
    const double l2 = min_eigenvalue(m2 - mg);
    const double l3 = min_eigenvalue(mg - msum_def);
    return -std::min(std::min(l0, l1), std::min(l2, l3));
  };

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    double gamma = 0.0;
    Vec3 g;
    bool feasible = false;

    void offer(double v, double gamma_, const Vec3& g_) {
      if (v < value) {
        value = v;
        gamma = gamma_;
        g = g_;
      }
      if (v <= kFeasTol) feasible = true;
    }
  };

  const double gamma1 = 0.5 * norm(a + b) + 0.5 * (al + be - 2.0);
  const double gamma2 = 0.5 * (al + be) - 0.5 * norm(a - b);
  const double glo = std::max(0.0, std::min(gamma1, gamma2));
  const double ghi = std::max(0.0, std::max(gamma1, gamma2));

  // Closed-form candidate points ahead of the grid: the product form, the
  // G_{++} choices of the trivial-order constructions, and the Jordan point.
  Best best;
  {
    std::vector<std::pair<double, Vec3>> extras = {
        {0.5 * (al * be + dot(a, b)), 0.5 * (al * b + be * a)},
        {be, b},
        {al, a},
        {al + be - 2.0, a + b},
        {0.0, Vec3{}},
        {0.5 * (1.0 + dot(a, b)), 0.5 * (a + b)},
        {0.5 * (glo + ghi), 0.5 * (a + b)},
    };
    for (const auto& [gamma, g] : extras) {
      best.offer(candidate_value(gamma, g), gamma, g);
      if (best.feasible) break;
    }
  }

  if (!best.feasible) {
    const GridAxis gamma_axis = linspace(glo, ghi, resolution);
    const double box = ghi;
    const GridAxis g_axis = linspace(-box, box, resolution);

    std::vector<Best> slice(gamma_axis.values.size());
    const int jobs = static_cast<int>(
        std::min<unsigned>(8, std::max(1u, std::thread::hardware_concurrency())));
    qjm::detail::parallel_for(
        gamma_axis.values.size(), jobs, [&](std::size_t gi) {
          const double gamma = gamma_axis.values[gi];
          Best local;
          // Per-constraint slacks; a candidate can only beat the incumbent v*
          // if every distance is below slack + 2 v*, so squared comparisons
          // against those bounds discard it without touching the matrices.
          const std::array<Vec3, 4> centers = {Vec3{}, a, b, a + b};
          const std::array<double, 4> slacks = {
              gamma, al - gamma, be - gamma, 2.0 + gamma - al - be};
          for (const double gx : g_axis.values) {
            for (const double gy : g_axis.values) {
              for (const double gz : g_axis.values) {
                const Vec3 g{gx, gy, gz};
                if (prune && std::isfinite(local.value)) {
                  bool hopeless = false;
                  const double budget = 2.0 * (local.value + kPrunePad);
                  for (int k = 0; k < 4; ++k) {
                    const double bound = slacks[k] + budget;
                    if (bound < 0.0 || norm_sq(g - centers[k]) > bound * bound) {
                      hopeless = true;
                      break;
                    }
                  }
                  if (hopeless) continue;
                }
                local.offer(candidate_value(gamma, g), gamma, g);
                if (local.feasible) break;
              }
              if (local.feasible) break;
            }
            if (local.feasible) break;
          }
          slice[gi] = local;
        });
    for (const Best& s : slice) {
      if (s.feasible) {
        best = s;
        break;
      }
      best.offer(s.value, s.gamma, s.g);
    }
  }

  const double margin = 2.0 * best.value;  // decide_jm's normalization
  if (best.feasible) {
    return {JmStatus::JointlyMeasurable, margin,
            make_effect(best.gamma, best.g)};
  }
  return {JmStatus::NotJointlyMeasurable, margin, std::nullopt};
}

}  // namespace detail

JmVerdict brute_force_jm(const SimpleObservable& o1, const SimpleObservable& o2,
                         int resolution) {
  return detail::brute_force_jm_impl(o1, o2, resolution, true);
}

double brute_force_min_d2(const TargetPair& target, double d1,
                          int resolution) {
  if (resolution < 16) {
    throw ParamOutOfRange("brute_force_min_d2: resolution must be >= 16");
  }
  if (!(d1 >= 0.0 && d1 <= 0.5)) {
    throw ParamOutOfRange("brute_force_min_d2: d1 outside [0, 1/2]");
  }
  const double h = 0.5 * target.theta;
  const double nx = std::sin(h), ny = std::cos(h);
  const double mx = -std::sin(h), my = std::cos(h);
  const double rad = 2.0 * d1;

  const GridAxis axis = linspace(-1.0, 1.0, resolution);

  // b-grid traversal ordered outward from m, so the scan of each a-candidate
  // stops as soon as no closer b exists.
  std::vector<int> xorder(resolution), yorder(resolution);
  std::iota(xorder.begin(), xorder.end(), 0);
  std::iota(yorder.begin(), yorder.end(), 0);
  std::sort(xorder.begin(), xorder.end(), [&](int l, int r) {
    return std::abs(axis.values[l] - mx) < std::abs(axis.values[r] - mx);
  });
  std::sort(yorder.begin(), yorder.end(), [&](int l, int r) {
    return std::abs(axis.values[l] - my) < std::abs(axis.values[r] - my);
  });

  auto jm_ok = [](double ax, double ay, double bx, double by) {
    return std::hypot(ax + bx, ay + by) + std::hypot(ax - bx, ay - by) <=
           2.0 + 1e-12;
  };

  double best = 0.5 * std::hypot(mx, my);  // b = 0 is always admissible

  auto consider_a = [&](double ax, double ay) {
    if (std::hypot(ax - nx, ay - ny) > rad + 1e-12) return;
    const double na = std::hypot(ax, ay);
    if (na > 1.0 + 1e-12) return;

    // Collinear b = t * a/|a| is admissible for every |t| <= 1.
    if (na > 1e-15) {
      for (const double t : axis.values) {
        const double bx = t * ax / na, by = t * ay / na;
        const double v = 0.5 * std::hypot(bx - mx, by - my);
        if (v < best) best = v;
      }
    }
    // b = m itself, when the pair admits it.
    if (jm_ok(ax, ay, mx, my)) {
      best = 0.0;
      return;
    }
    for (const int xi : xorder) {
      const double bx = axis.values[xi];
      const double dx2 = (bx - mx) * (bx - mx);
      if (dx2 >= 4.0 * best * best) break;
      for (const int yi : yorder) {
        const double by = axis.values[yi];
        const double d2 = dx2 + (by - my) * (by - my);
        if (d2 >= 4.0 * best * best) break;
        if (jm_ok(ax, ay, bx, by)) {
          best = 0.5 * std::sqrt(d2);
        }
      }
    }
  };

  // The disk center (= n) and the best collinear-with-m point are admissible
  // a-candidates for every budget; the grid follows.
  consider_a(nx, ny);
  const double c = nx * mx + ny * my;
  consider_a(c * mx, c * my);
  for (const double ax : axis.values) {
    if (std::abs(ax - nx) > rad + 1e-12) continue;
    for (const double ay : axis.values) {
      consider_a(ax, ay);
    }
  }
  return best;
}

}  // namespace qjm::oracle
