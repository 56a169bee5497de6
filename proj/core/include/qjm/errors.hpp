#pragma once

#include <stdexcept>
#include <string>

namespace qjm {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A candidate (alpha, a) pair is not a valid effect. Carries the worst
/// eigenvalue-bound violation: min{alpha - |a|, 2 - alpha - |a|} / 2, which is
/// negative for invalid candidates.
class NotAnEffect : public Error {
 public:
  NotAnEffect(const std::string& what, double deficit)
      : Error(what), deficit_(deficit) {}
  double deficit() const { return deficit_; }

 private:
  double deficit_;
};

/// A direction-dependent operation was applied to a (near-)zero vector.
class DegenerateAxis : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside its documented domain.
class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

/// a+b or a-b vanishes where a formula divides by its norm.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

/// Covariant-family parameters (gamma, p) violate their feasibility interval.
class ParamsInfeasible : public Error {
 public:
  using Error::Error;
};

/// A construction requiring joint measurability was invoked on an
/// incompatible pair.
class NotJointlyMeasurableError : public Error {
 public:
  using Error::Error;
};

/// symmetrize_joint was given a joint observable whose marginals are not
/// covariant under the supplied symmetry axis.
class MarginalsNotCovariant : public Error {
 public:
  using Error::Error;
};

/// Stochastic-matrix columns violate the approximation ordering
/// lambda_++ >= lambda_+-.
class OrderingViolated : public Error {
 public:
  using Error::Error;
};

/// Target sharp observables are collinear where a plane or angle is needed.
class DegenerateTargets : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap without a usable result.
class SolverDidNotConverge : public Error {
 public:
  using Error::Error;
};

}  // namespace qjm
