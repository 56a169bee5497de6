#pragma once

#include <optional>
#include <utility>

#include "qjm/effect.hpp"

namespace qjm {

/// Slack used by the closed-form joint-measurability inequalities so that
/// exact boundary cases (equality in exact arithmetic) are classified
/// consistently despite rounding.
inline constexpr double kCriterionTol = 1e-12;

/// A four-outcome observable G_{++}, G_{+-}, G_{-+}, G_{--}. The components
/// sum to the identity and the row/column sums are the marginal observables.
struct JointObservable {
  Effect gpp, gpm, gmp, gmm;
};

enum class JmStatus { JointlyMeasurable, NotJointlyMeasurable, Undetermined };

/// Decision outcome of decide_jm. `margin` is the minimum of the feasibility
/// function F over candidate G_{++} operators; F <= 0 certifies joint
/// measurability. A witness (a feasible G_{++}) is present exactly for
/// JointlyMeasurable verdicts.
struct JmVerdict {
  JmStatus status;
  double margin;
  std::optional<Effect> witness;
};

/// The interval of admissible gamma = tr-coordinate values of G_{++} forced
/// by the two diagonal ball pairs:
///   gamma1 = |a+b|/2 + (alpha+beta-2)/2,  gamma2 = (alpha+beta)/2 - |a-b|/2.
struct GammaInterval {
  double gamma1;
  double gamma2;
  bool nonempty() const { return gamma2 >= gamma1 - kCriterionTol; }
};

/// Column-stochastic 2x2 matrix given by its first-row entries; the columns
/// are {lpp, 1-lpp} and {lpm, 1-lpm}.
struct StochasticMatrix2 {
  double lpp;
  double lpm;
};

/// Parameters of a covariant joint observable of E^{1,a}, E^{1,b}:
/// G_{++} = A(gamma, (a+b)/2 + p*u) with u a unit vector orthogonal to both
/// a and b. Feasible iff
///   sqrt(|a+b|^2/4 + p^2) <= gamma <= 1 - sqrt(|a-b|^2/4 + p^2).
struct CovariantParams {
  double gamma;
  double p;
  UnitVector3 u;
};

/// Evaluation of the A1 <= A2 sufficient condition. `lhs` is reported in the
/// normalized form compared against 1:
///   (|a+b| + |a-b| + |(2-a-b)/|a+b|*(a+b) - (a-b)/|a-b|*(a-b)|) / 2.
/// The distinguished operators A1 = A(gamma1, g1), A2 = A(gamma2, g2) are
/// returned as raw coordinate pairs; they need not be valid effects.
struct SufficientReport {
  bool holds;
  double lhs;
  double gamma1;
  Vec3 g1;
  double gamma2;
  Vec3 g2;
};

struct EquivalentForms {
  bool additive;    ///< |a+b| + |a-b| <= 2
  bool quadratic;   ///< |a|^2 + |b|^2 <= 1 + (a.b)^2
  bool commutator;  ///< |a x b|^2 <= (1-|a|^2)(1-|b|^2)
};

GammaInterval gamma_interval(const SimpleObservable& o1,
                             const SimpleObservable& o2);

/// Necessary condition for joint measurability of any pair:
/// |a+b| + |a-b| <= 2. A false result certifies incompatibility.
bool necessary_jm(const SimpleObservable& o1, const SimpleObservable& o2);

/// Exact criterion for covariant observables (alpha = beta = 1):
/// E^{1,a} and E^{1,b} are jointly measurable iff |a+b| + |a-b| <= 2.
bool covariant_jm(const Vec3& a, const Vec3& b);

/// The three algebraically equivalent forms of the covariant criterion.
EquivalentForms equivalent_forms_jm(const Vec3& a, const Vec3& b);

/// If one of the order relations E1+ >= E2+, E1+ <= E2+, E1+ >= E2-,
/// E1+ <= E2- holds, returns the corresponding explicit joint observable;
/// otherwise empty.
std::optional<JointObservable> trivial_joint(const SimpleObservable& o1,
                                             const SimpleObservable& o2);

/// For commuting observables (a x b = 0 within 1e-12) returns the product
/// joint observable G_ij = E1_i E2_j; otherwise empty.
std::optional<JointObservable> product_joint(const SimpleObservable& o1,
                                             const SimpleObservable& o2);

/// Decides joint measurability by minimizing the convex feasibility function
///   F(gamma, g) = max{ |g| - gamma,
///                      |a - g| - (alpha - gamma),
///                      |b - g| - (beta - gamma),
///                      |a + b - g| - (2 + gamma - alpha - beta) }
/// over (gamma, g) in R^4. F* <= 0 means the four defining balls intersect.
/// Returns JointlyMeasurable when a point with F <= 0 is found (margin is the
/// best value seen), NotJointlyMeasurable when the minimum is >= +tol, and
/// Undetermined for margins inside (0, tol).
JmVerdict decide_jm(const SimpleObservable& o1, const SimpleObservable& o2,
                    double tol = 1e-9);

/// Sufficient condition A1 <= A2 between the two distinguished operators of
/// the cone intersections. Throws DegenerateDirection when a+b or a-b
/// vanishes.
SufficientReport sufficient_jm(const SimpleObservable& o1,
                               const SimpleObservable& o2);

/// Stronger sufficient condition
/// |a+b| + |a-b| + |2-alpha-beta| + |alpha-beta| <= 2, equivalently
/// ||E1+ - E2+|| + ||E1+ - E2-|| <= 1.
bool strong_sufficient_jm(const SimpleObservable& o1,
                          const SimpleObservable& o2);

/// True iff none of the four trivial order relations can hold:
/// |alpha-beta| < |a-b| and |2-alpha-beta| < |a+b|.
bool is_nontrivial_pair(const SimpleObservable& o1,
                        const SimpleObservable& o2);

/// A deterministic unit vector orthogonal to both a and b: the normalized
/// cross product when it is nonzero, otherwise the smallest-index coordinate
/// axis projected into the orthogonal complement.
UnitVector3 orthogonal_unit(const Vec3& a, const Vec3& b);

/// The covariant joint observable of E^{1,a}, E^{1,b} with parameters
/// (gamma, p, u). Throws ParamsInfeasible if the feasibility interval or the
/// orthogonality of u fails.
JointObservable covariant_joint(const Vec3& a, const Vec3& b,
                                const CovariantParams& params);

/// The Jordan joint observable G0_ij = (E1_i E2_j + E2_j E1_i)/2, i.e. the
/// covariant joint observable with gamma = (1 + a.b)/2 and p = 0. Requires
/// covariant_jm(a, b).
JointObservable jordan_joint(const Vec3& a, const Vec3& b);

/// Covariant symmetrization G~_ij = (G_ij + U G_{-i-j} U)/2 for U = u.sigma.
/// Preserves the marginals; requires them to be U-covariant.
JointObservable symmetrize_joint(const JointObservable& g,
                                 const UnitVector3& u);

/// The non-covariant joint observable family of E^{1,a}, E^{1,b} for
/// a.b >= 0, |a+b| < 1 and 0 < t <= 1/|a+b| - 1. Its marginals are exact but
/// G_{++} and G_{--} have different eigenvalues for t > 0.
JointObservable skewed_joint(const Vec3& a, const Vec3& b, double t);

/// True iff the four components span the full operator space, decided by the
/// rank of the 4x4 coordinate matrix with singular values below 1e-10
/// counted as zero.
bool informational_completeness(const JointObservable& g);

/// U(O1) * U(O2) - 4 ||[E1+, E2+]||^2. Nonnegative for every jointly
/// measurable pair; for alpha = beta = 1 nonnegativity is equivalent to
/// joint measurability.
double unsharpness_product_residual(const SimpleObservable& o1,
                                    const SimpleObservable& o2);

/// Post-processing by a column-stochastic matrix:
/// plus-effect = lpp * E+ + lpm * E-.
SimpleObservable coarse_grain(const SimpleObservable& o,
                              const StochasticMatrix2& l);

/// True iff lambda_++ + mu_++ <= 1 + min{lambda_+-, mu_+-}; then the
/// coarse-grainings of ANY pair by L1, L2 are jointly measurable via the
/// constant witness min{lambda_+-, mu_+-} * I. Requires the ordering
/// lambda_++ >= lambda_+- for both matrices.
bool smearing_jm_threshold(const StochasticMatrix2& l1,
                           const StochasticMatrix2& l2);

// ---- Support helpers -----------------------------------------------------

/// The two marginals (E1, E2) of a joint observable.
std::pair<SimpleObservable, SimpleObservable> marginals(
    const JointObservable& g);

/// Builds the joint observable determined by a feasible G_{++}:
/// {G_{++}, E1+ - G_{++}, E2+ - G_{++}, I - E1+ - E2+ + G_{++}}.
JointObservable joint_from_witness(const SimpleObservable& o1,
                                   const SimpleObservable& o2,
                                   const Effect& gpp);

/// Largest absolute deviation of the component sum from the identity.
double joint_sum_residual(const JointObservable& g);

/// True iff all four components are valid effects (within tol) and they sum
/// to the identity within 1e-10.
bool is_joint_observable(const JointObservable& g, double tol = 1e-10);

/// Covariance test: U G_{++} U = G_{--} and U G_{+-} U = G_{-+} within tol.
bool is_covariant_joint(const JointObservable& g, const UnitVector3& u,
                        double tol = 1e-10);

/// Feasibility of covariant parameters (gamma, p) for the pair (a, b).
bool covariant_params_feasible(const Vec3& a, const Vec3& b, double gamma,
                               double p, double tol = 1e-12);

}  // namespace qjm
