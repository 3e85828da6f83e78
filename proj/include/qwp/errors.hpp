#pragma once

#include <stdexcept>
#include <string>

namespace qwp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Potential coefficients are non-finite or the mass is not positive.
class InvalidPotentialError : public Error {
 public:
  using Error::Error;
};

/// A state violates positivity or the generalized uncertainty inequality
/// beyond tolerance.
class UnphysicalStateError : public Error {
 public:
  using Error::Error;
};

/// Moments are not Gaussian-representable (dx2*dp2 - dxp^2 != hbar^2/4).
class NotGaussianError : public Error {
 public:
  using Error::Error;
};

/// Orbit constants violate the regime's consistency condition.
class InvalidOrbitError : public Error {
 public:
  using Error::Error;
};

/// Operation has no meaning in the requested regime.
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

/// Hyperbolic argument large enough to overflow cosh/sinh.
class RangeOverflowError : public Error {
 public:
  using Error::Error;
};

/// Grid problems: insufficient coverage, norm deficit, boundary
/// contamination, under-resolution.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Requested ODE step size is too large for the target tolerance.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// File I/O failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwp
