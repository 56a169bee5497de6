#include "qjm/jointness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace qjm {
namespace {

constexpr double kOrderTol = 1e-12;  // PSD-order checks in trivial_joint

// E >= F as operators, via the smallest eigenvalue of the difference.
bool effect_geq(const Effect& e, const Effect& f, double tol = kOrderTol) {
  return (e.alpha - f.alpha) - norm(e.a - f.a) >= -2.0 * tol;
}

Effect raw_sum(const Effect& e, const Effect& f) {
  return {e.alpha + f.alpha, e.a + f.a};
}

Effect raw_diff(const Effect& e, const Effect& f) {
  return {e.alpha - f.alpha, e.a - f.a};
}

// Product of two commuting effects, (alpha*beta + a.b, alpha*b + beta*a)/2.
Effect effect_product(const Effect& e, const Effect& f) {
  return make_effect(0.5 * (e.alpha * f.alpha + dot(e.a, f.a)),
                     0.5 * (e.alpha * f.a + f.alpha * e.a));
}

bool effect_close(const Effect& e, const Effect& f, double tol) {
  return std::abs(e.alpha - f.alpha) <= tol && norm(e.a - f.a) <= tol;
}

// Singular values of a 4x4 matrix by one-sided Jacobi orthogonalization.
std::array<double, 4> singular_values_4x4(std::array<std::array<double, 4>, 4> m) {
  auto col_dot = [&m](int p, int q) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += m[i][p] * m[i][q];
    return s;
  };
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double app = col_dot(p, p);
        const double aqq = col_dot(q, q);
        const double apq = col_dot(p, q);
        if (std::abs(apq) <= 1e-30 + 1e-16 * std::sqrt(app * aqq)) continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < 4; ++i) {
          const double mp = m[i][p], mq = m[i][q];
          m[i][p] = c * mp - s * mq;
          m[i][q] = s * mp + c * mq;
        }
      }
    }
    if (!rotated) break;
  }
  std::array<double, 4> sv{};
  for (int j = 0; j < 4; ++j) sv[j] = std::sqrt(col_dot(j, j));
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

}  // namespace

GammaInterval gamma_interval(const SimpleObservable& o1,
                             const SimpleObservable& o2) {
  const double al = o1.plus.alpha, be = o2.plus.alpha;
  const double s = norm(o1.plus.a + o2.plus.a);
  const double d = norm(o1.plus.a - o2.plus.a);
  return {0.5 * s + 0.5 * (al + be - 2.0), 0.5 * (al + be) - 0.5 * d};
}

bool necessary_jm(const SimpleObservable& o1, const SimpleObservable& o2) {
  const double s = norm(o1.plus.a + o2.plus.a);
  const double d = norm(o1.plus.a - o2.plus.a);
  return s + d <= 2.0 + kCriterionTol;
}

bool covariant_jm(const Vec3& a, const Vec3& b) {
  return norm(a + b) + norm(a - b) <= 2.0 + kCriterionTol;
}

EquivalentForms equivalent_forms_jm(const Vec3& a, const Vec3& b) {
  const double ab = dot(a, b);
  return {
      norm(a + b) + norm(a - b) <= 2.0 + kCriterionTol,
      norm_sq(a) + norm_sq(b) <= 1.0 + ab * ab + kCriterionTol,
      norm_sq(cross(a, b)) <=
          (1.0 - norm_sq(a)) * (1.0 - norm_sq(b)) + kCriterionTol,
  };
}

std::optional<JointObservable> trivial_joint(const SimpleObservable& o1,
                                             const SimpleObservable& o2) {
  const Effect& e1 = o1.plus;
  const Effect& e2 = o2.plus;
  const Effect e1c = complement(e1);
  const Effect e2c = complement(e2);
  auto clamp = [](const Effect& e) { return make_effect(e.alpha, e.a); };
  if (effect_geq(e1, e2)) {  // (a) E1+ >= E2+
    return JointObservable{clamp(e2), clamp(raw_diff(e1, e2)), zero_effect(),
                           clamp(e1c)};
  }
  if (effect_geq(e2, e1)) {  // (b) E1+ <= E2+
    return JointObservable{clamp(e1), zero_effect(), clamp(raw_diff(e2, e1)),
                           clamp(e2c)};
  }
  if (effect_geq(e1, e2c)) {  // (c) E1+ >= E2-
    return JointObservable{clamp(raw_diff(e1, e2c)), clamp(e2c), clamp(e1c),
                           zero_effect()};
  }
  if (effect_geq(e2c, e1)) {  // (d) E1+ <= E2-
    return JointObservable{zero_effect(), clamp(e1), clamp(e2),
                           clamp(raw_diff(e2c, e1))};
  }
  return std::nullopt;
}

std::optional<JointObservable> product_joint(const SimpleObservable& o1,
                                             const SimpleObservable& o2) {
  if (norm(cross(o1.plus.a, o2.plus.a)) > 1e-12) return std::nullopt;
  const Effect& e1 = o1.plus;
  const Effect& e2 = o2.plus;
  const Effect e1c = complement(e1);
  const Effect e2c = complement(e2);
  return JointObservable{effect_product(e1, e2), effect_product(e1, e2c),
                         effect_product(e1c, e2), effect_product(e1c, e2c)};
}

SufficientReport sufficient_jm(const SimpleObservable& o1,
                               const SimpleObservable& o2) {
  const double al = o1.plus.alpha, be = o2.plus.alpha;
  const Vec3 sum = o1.plus.a + o2.plus.a;
  const Vec3 dif = o1.plus.a - o2.plus.a;
  const double s = norm(sum);
  const double d = norm(dif);
  if (s < kDegenerateNorm || d < kDegenerateNorm) {
    throw DegenerateDirection(
        "sufficient_jm: a+b or a-b vanishes; distinguished operators "
        "undefined");
  }
  const GammaInterval gi = gamma_interval(o1, o2);
  const Vec3 g1 = 0.5 * (1.0 - (2.0 - al - be) / s) * sum;
  const Vec3 g2 = 0.5 * sum - (al - be) / d * (0.5 * dif);
  const Vec3 x = ((2.0 - al - be) / s) * sum - ((al - be) / d) * dif;
  const double lhs = 0.5 * (s + d + norm(x));
  return {lhs <= 1.0 + kCriterionTol, lhs, gi.gamma1, g1, gi.gamma2, g2};
}

bool strong_sufficient_jm(const SimpleObservable& o1,
                          const SimpleObservable& o2) {
  const double al = o1.plus.alpha, be = o2.plus.alpha;
  const double s = norm(o1.plus.a + o2.plus.a);
  const double d = norm(o1.plus.a - o2.plus.a);
  return s + d + std::abs(2.0 - al - be) + std::abs(al - be) <=
         2.0 + kCriterionTol;
}

bool is_nontrivial_pair(const SimpleObservable& o1,
                        const SimpleObservable& o2) {
  const double al = o1.plus.alpha, be = o2.plus.alpha;
  const double s = norm(o1.plus.a + o2.plus.a);
  const double d = norm(o1.plus.a - o2.plus.a);
  return std::abs(al - be) < d && std::abs(2.0 - al - be) < s;
}

UnitVector3 orthogonal_unit(const Vec3& a, const Vec3& b) {
  const Vec3 c = cross(a, b);
  if (norm(c) > 1e-12 * std::max(1.0, norm(a) * norm(b))) {
    return UnitVector3::normalized(c);
  }
  const Vec3 v = norm(a) >= norm(b) ? a : b;
  if (norm(v) < kDegenerateNorm) return UnitVector3::from({1.0, 0.0, 0.0});
  const Vec3 vhat = (1.0 / norm(v)) * v;
  const std::array<Vec3, 3> axes = {Vec3{1, 0, 0}, Vec3{0, 1, 0},
                                    Vec3{0, 0, 1}};
  for (const Vec3& e : axes) {
    const Vec3 w = e - dot(e, vhat) * vhat;
    if (norm(w) > 1e-6) return UnitVector3::normalized(w);
  }
  return UnitVector3::from({1.0, 0.0, 0.0});  // unreachable
}

bool covariant_params_feasible(const Vec3& a, const Vec3& b, double gamma,
                               double p, double tol) {
  const double lo = std::sqrt(0.25 * norm_sq(a + b) + p * p);
  const double hi = 1.0 - std::sqrt(0.25 * norm_sq(a - b) + p * p);
  return gamma >= lo - tol && gamma <= hi + tol;
}

JointObservable covariant_joint(const Vec3& a, const Vec3& b,
                                const CovariantParams& params) {
  const Vec3& u = params.u.vec();
  const double ortho = std::max(std::abs(dot(u, a)), std::abs(dot(u, b)));
  if (ortho > 1e-10) {
    throw ParamsInfeasible(
        "covariant_joint: u is not orthogonal to a and b (residual " +
        std::to_string(ortho) + ")");
  }
  const double lo = std::sqrt(0.25 * norm_sq(a + b) + params.p * params.p);
  const double hi = 1.0 - std::sqrt(0.25 * norm_sq(a - b) + params.p * params.p);
  if (params.gamma < lo - 1e-12 || params.gamma > hi + 1e-12) {
    throw ParamsInfeasible("covariant_joint: gamma = " +
                           std::to_string(params.gamma) + " outside [" +
                           std::to_string(lo) + ", " + std::to_string(hi) +
                           "]");
  }
  const double gamma = std::clamp(params.gamma, std::min(lo, hi), hi);
  const Vec3 half_sum = 0.5 * (a + b);
  const Vec3 half_dif = 0.5 * (a - b);
  const Vec3 pu = params.p * u;
  return {make_effect(gamma, half_sum + pu),
          make_effect(1.0 - gamma, half_dif - pu),
          make_effect(1.0 - gamma, -half_dif - pu),
          make_effect(gamma, -half_sum + pu)};
}

JointObservable jordan_joint(const Vec3& a, const Vec3& b) {
  if (!covariant_jm(a, b)) {
    throw NotJointlyMeasurableError(
        "jordan_joint: |a+b| + |a-b| > 2, the pair has no joint observable");
  }
  const double gamma0 = 0.5 * (1.0 + dot(a, b));
  return covariant_joint(a, b, {gamma0, 0.0, orthogonal_unit(a, b)});
}

JointObservable symmetrize_joint(const JointObservable& g,
                                 const UnitVector3& u) {
  const auto [m1, m2] = marginals(g);
  for (const SimpleObservable& m : {m1, m2}) {
    const double res = std::max(std::abs(m.plus.alpha - 1.0),
                                std::abs(dot(u.vec(), m.plus.a)));
    if (res > 1e-10) {
      throw MarginalsNotCovariant(
          "symmetrize_joint: marginal is not covariant under u (residual " +
          std::to_string(res) + ")");
    }
  }
  auto avg = [&u](const Effect& e, const Effect& f) {
    const Effect rf = reflect_effect(f, u);
    return make_effect(0.5 * (e.alpha + rf.alpha), 0.5 * (e.a + rf.a));
  };
  return {avg(g.gpp, g.gmm), avg(g.gpm, g.gmp), avg(g.gmp, g.gpm),
          avg(g.gmm, g.gpp)};
}

JointObservable skewed_joint(const Vec3& a, const Vec3& b, double t) {
  if (dot(a, b) < -kCriterionTol) {
    throw ParamOutOfRange("skewed_joint: requires a.b >= 0");
  }
  const double s = norm(a + b);
  if (s >= 1.0 - kCriterionTol) {
    throw ParamOutOfRange("skewed_joint: requires |a+b| < 1");
  }
  const double tmax = s < kDegenerateNorm
                          ? std::numeric_limits<double>::infinity()
                          : 1.0 / s - 1.0;
  if (!(t > 0.0) || t > tmax + kCriterionTol) {
    throw ParamOutOfRange(
        "skewed_joint: t must satisfy 0 < t <= 1/|a+b| - 1");
  }
  const Vec3 sum = a + b;
  return {make_effect(0.5, 0.5 * (1.0 + t) * sum),
          make_effect(0.5, 0.5 * ((1.0 - t) * a - (1.0 + t) * b)),
          make_effect(0.5, 0.5 * ((1.0 - t) * b - (1.0 + t) * a)),
          make_effect(0.5, -0.5 * (1.0 - t) * sum)};
}

bool informational_completeness(const JointObservable& g) {
  const std::array<const Effect*, 4> comp = {&g.gpp, &g.gpm, &g.gmp, &g.gmm};
  std::array<std::array<double, 4>, 4> m{};
  for (int i = 0; i < 4; ++i) {
    m[i] = {comp[i]->alpha, comp[i]->a.x, comp[i]->a.y, comp[i]->a.z};
  }
  const auto sv = singular_values_4x4(m);
  int rank = 0;
  for (double s : sv) {
    if (s > 1e-10) ++rank;
  }
  return rank == 4;
}

double unsharpness_product_residual(const SimpleObservable& o1,
                                    const SimpleObservable& o2) {
  auto unsharpness = [](const SimpleObservable& o) {
    const double s =
        norm(o.plus.a) * (1.0 - std::abs(1.0 - o.plus.alpha));
    return 1.0 - s * s;
  };
  const double cn = commutator_norm(o1.plus, o2.plus);
  return unsharpness(o1) * unsharpness(o2) - 4.0 * cn * cn;
}

SimpleObservable coarse_grain(const SimpleObservable& o,
                              const StochasticMatrix2& l) {
  if (!(l.lpp >= 0.0 && l.lpp <= 1.0 && l.lpm >= 0.0 && l.lpm <= 1.0)) {
    throw ParamOutOfRange("coarse_grain: stochastic entries outside [0, 1]");
  }
  const Effect& ep = o.plus;
  const Effect em = complement(ep);
  return {make_effect(l.lpp * ep.alpha + l.lpm * em.alpha,
                      l.lpp * ep.a + l.lpm * em.a)};
}

bool smearing_jm_threshold(const StochasticMatrix2& l1,
                           const StochasticMatrix2& l2) {
  for (const StochasticMatrix2& l : {l1, l2}) {
    if (!(l.lpp >= 0.0 && l.lpp <= 1.0 && l.lpm >= 0.0 && l.lpm <= 1.0)) {
      throw ParamOutOfRange(
          "smearing_jm_threshold: stochastic entries outside [0, 1]");
    }
    if (l.lpp < l.lpm - kCriterionTol) {
      throw OrderingViolated(
          "smearing_jm_threshold: requires lambda_++ >= lambda_+-");
    }
  }
  return l1.lpp + l2.lpp <=
         1.0 + std::min(l1.lpm, l2.lpm) + kCriterionTol;
}

std::pair<SimpleObservable, SimpleObservable> marginals(
    const JointObservable& g) {
  return {SimpleObservable{raw_sum(g.gpp, g.gpm)},
          SimpleObservable{raw_sum(g.gpp, g.gmp)}};
}

JointObservable joint_from_witness(const SimpleObservable& o1,
                                   const SimpleObservable& o2,
                                   const Effect& gpp) {
  const Effect& e1 = o1.plus;
  const Effect& e2 = o2.plus;
  return {make_effect(gpp.alpha, gpp.a),
          make_effect(e1.alpha - gpp.alpha, e1.a - gpp.a),
          make_effect(e2.alpha - gpp.alpha, e2.a - gpp.a),
          make_effect(2.0 - e1.alpha - e2.alpha + gpp.alpha,
                      gpp.a - e1.a - e2.a)};
}

double joint_sum_residual(const JointObservable& g) {
  const double alpha_sum = g.gpp.alpha + g.gpm.alpha + g.gmp.alpha + g.gmm.alpha;
  const Vec3 a_sum = g.gpp.a + g.gpm.a + g.gmp.a + g.gmm.a;
  return std::max(std::abs(alpha_sum - 2.0), norm(a_sum));
}

bool is_joint_observable(const JointObservable& g, double tol) {
  if (joint_sum_residual(g) > tol) return false;
  for (const Effect* e : {&g.gpp, &g.gpm, &g.gmp, &g.gmm}) {
    if (!is_effect(e->alpha, e->a, tol)) return false;
  }
  return true;
}

bool is_covariant_joint(const JointObservable& g, const UnitVector3& u,
                        double tol) {
  return effect_close(reflect_effect(g.gpp, u), g.gmm, tol) &&
         effect_close(reflect_effect(g.gpm, u), g.gmp, tol);
}

}  // namespace qjm
