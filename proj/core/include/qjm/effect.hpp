#pragma once

#include <utility>

#include "qjm/errors.hpp"
#include "qjm/vec3.hpp"

namespace qjm {

/// Absolute tolerance on the eigenvalue bounds when validating effects.
/// Candidates violating the bounds by no more than this are clamped to the
/// nearest valid effect; worse candidates are rejected.
inline constexpr double kEffectTol = 1e-12;

/// Vectors with norm below this have no usable direction; operations needing
/// an axis reject them instead of normalizing.
inline constexpr double kDegenerateNorm = 1e-14;

/// A qubit effect in Bloch coordinates: the operator (alpha*I + a.sigma)/2.
/// Valid iff |a| <= alpha <= 2 - |a|, i.e. both eigenvalues
/// (alpha -+ |a|)/2 lie in [0, 1]. The struct itself is an open aggregate;
/// use make_effect to construct validated values.
struct Effect {
  double alpha = 0.0;
  Vec3 a;
};

/// A two-outcome observable, determined by its "+" effect; the "-" effect is
/// the complement.
struct SimpleObservable {
  Effect plus;
};

/// A vector certified to have unit norm (within 1e-12 on input, exactly
/// renormalized on construction).
class UnitVector3 {
 public:
  /// Wraps a vector that is already unit length within 1e-12.
  static UnitVector3 from(const Vec3& v);
  /// Normalizes an arbitrary vector; rejects degenerate (near-zero) input.
  static UnitVector3 normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }

 private:
  explicit UnitVector3(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

/// Spectral data of an effect with nonzero Bloch vector:
///   A = weight_plus * A(1, axis) + weight_minus * A(1, -axis),
/// weight_plus = (alpha + |a|)/2 >= weight_minus = (alpha - |a|)/2.
struct SpectralDecomposition {
  double weight_plus;
  double weight_minus;
  UnitVector3 axis;
};

/// Worst violation of the effect eigenvalue bounds:
/// min{(alpha - |a|)/2, (2 - alpha - |a|)/2}. Nonnegative iff (alpha, a) is a
/// valid effect.
double effect_deficit(double alpha, const Vec3& a);

bool is_effect(double alpha, const Vec3& a, double tol = kEffectTol);

/// Validates (alpha, a) and returns the effect, clamping violations within
/// kEffectTol onto the boundary of the valid set. Throws NotAnEffect with the
/// eigenvalue deficit otherwise.
Effect make_effect(double alpha, const Vec3& a);

inline SimpleObservable make_observable(double alpha, const Vec3& a) {
  return {make_effect(alpha, a)};
}

/// The sharp observable E^{1,n}.
SimpleObservable sharp_observable(const UnitVector3& n);

inline Effect zero_effect() { return {0.0, {}}; }
inline Effect identity_effect() { return {2.0, {}}; }

/// I - A = A(2 - alpha, -a). An involution.
Effect complement(const Effect& e);

inline SimpleObservable complement(const SimpleObservable& o) {
  return {complement(o.plus)};
}

/// Eigenvalue pair ((alpha - |a|)/2, (alpha + |a|)/2), i.e. (min, max).
std::pair<double, double> eigenvalues(const Effect& e);

/// Throws DegenerateAxis for |a| below kDegenerateNorm.
SpectralDecomposition spectral_decomposition(const Effect& e);

/// Operator norm of the commutator of two effects, |a x b| / 2.
/// Vanishes exactly when the Bloch vectors are collinear.
double commutator_norm(const Effect& e, const Effect& f);

/// Conjugation by the selfadjoint unitary U = u.sigma: the Bloch vector is
/// reflected through the axis u, (alpha, a) -> (alpha, 2(u.a)u - a).
Effect reflect_effect(const Effect& e, const UnitVector3& u);

/// Convex mixture t*O1 + (1-t)*O2 of two observables, outcome-wise.
/// t must lie in [0, 1].
SimpleObservable mix_observables(const SimpleObservable& o1,
                                 const SimpleObservable& o2, double t);

}  // namespace qjm
