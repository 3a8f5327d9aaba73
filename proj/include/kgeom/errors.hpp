#pragma once

#include <stdexcept>
#include <string>

namespace kgeom {

/// Base class for all kgeom failures that carry a domain meaning.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A derivative of the kernel was requested beyond its smoothness
/// (pure Laplace kernel: no gradient at the center, no Hessian anywhere).
class NonDifferentiableKernel : public Error {
public:
  using Error::Error;
};

/// Two points of a cloud coincide; the Gram matrix would be singular.
class DuplicatePoints : public Error {
public:
  using Error::Error;
};

/// Cholesky failed even after jitter escalation.
class IllConditioned : public Error {
public:
  using Error::Error;
};

/// |grad u| fell below the threshold; no normal direction is defined.
class DegenerateGradient : public Error {
public:
  DegenerateGradient(const std::string& msg, double grad_norm)
      : Error(msg), grad_norm_(grad_norm) {}

  double grad_norm() const { return grad_norm_; }

private:
  double grad_norm_;
};

/// Orientation reference vector is zero.
class ZeroReference : public Error {
public:
  using Error::Error;
};

/// Model file cannot be parsed or violates model invariants.
class MalformedModelFile : public Error {
public:
  using Error::Error;
};

/// A point handed to an analytic ground-truth formula does not lie on
/// the surface.
class OffSurfacePoint : public Error {
public:
  using Error::Error;
};

}  // namespace kgeom
