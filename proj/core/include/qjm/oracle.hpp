#pragma once

#include <utility>

#include "qjm/approximation.hpp"
#include "qjm/effect.hpp"
#include "qjm/jointness.hpp"

/// Brute-force verification layer. Everything here is recomputed from
/// explicit 2x2 Hermitian matrices and exhaustive grid search; it never uses
/// the coordinate formulas of the other modules for the quantity under test.
namespace qjm::oracle {

/// A 2x2 Hermitian matrix [[d00, z], [conj(z), d11]] stored as four reals,
/// z = re01 + i*im01.
struct HermitianMatrix2 {
  double d00 = 0.0;
  double d11 = 0.0;
  double re01 = 0.0;
  double im01 = 0.0;
};

HermitianMatrix2 operator+(const HermitianMatrix2& a,
                           const HermitianMatrix2& b);
HermitianMatrix2 operator-(const HermitianMatrix2& a,
                           const HermitianMatrix2& b);
HermitianMatrix2 operator*(double s, const HermitianMatrix2& a);

HermitianMatrix2 identity_matrix();

/// The matrix (alpha*I + a1*sigma1 + a2*sigma2 + a3*sigma3) / 2. Accepts
/// arbitrary coordinates, including invalid effect candidates.
HermitianMatrix2 effect_matrix(double alpha, const Vec3& a);
HermitianMatrix2 effect_matrix(const Effect& e);

/// Closed-form eigenvalues via trace and determinant.
double min_eigenvalue(const HermitianMatrix2& m);
double max_eigenvalue(const HermitianMatrix2& m);
std::pair<double, double> matrix_eigenvalues(const HermitianMatrix2& m);

/// M*M (a Hermitian product).
HermitianMatrix2 hermitian_square(const HermitianMatrix2& m);

/// (A*B + B*A)/2, the Hermitian part of the product; equals A*B whenever the
/// two matrices commute.
HermitianMatrix2 symmetrized_product(const HermitianMatrix2& a,
                                     const HermitianMatrix2& b);

/// Operator norm |A| = max |eigenvalue|.
double operator_norm(const HermitianMatrix2& m);

/// A qubit state (I + r.sigma)/2 with |r| <= 1.
struct BlochState {
  Vec3 r;
};

/// Outcome probability tr[T_r A], computed from the explicit matrices.
double probability(const Effect& e, const BlochState& state);

/// Exhaustive search for a feasible G_{++} over a 4-dimensional grid in
/// (gamma, g): gamma ranges over the interval forced by the diagonal ball
/// pairs, g over the enclosing box, with `resolution` points per axis. Each
/// candidate is checked through the four matrix inequalities via
/// min_eigenvalue. Returns JointlyMeasurable on the first feasible candidate
/// (a handful of closed-form candidate points is scanned ahead of the grid),
/// otherwise NotJointlyMeasurable with the least-infeasible margin found, in
/// the same normalization as decide_jm. Resolution-dependent by construction;
/// intended as a cross-check.
JmVerdict brute_force_jm(const SimpleObservable& o1,
                         const SimpleObservable& o2, int resolution);

/// Dense-grid upper bound on the boundary value min{D2 : (d1, D2)
/// admissible}: scans planar (a, b) pairs honoring both constraints and
/// returns the smallest D2 found. Converges to the infimum from above as the
/// resolution grows.
double brute_force_min_d2(const TargetPair& target, double d1, int resolution);

namespace detail {
/// Implementation with the incumbent-based pruning switchable, so tests can
/// confirm pruning never changes the result.
JmVerdict brute_force_jm_impl(const SimpleObservable& o1,
                              const SimpleObservable& o2, int resolution,
                              bool prune);
}  // namespace detail

}  // namespace qjm::oracle
