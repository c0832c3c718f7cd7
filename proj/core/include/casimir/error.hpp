#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Green tensor requested at r == r'. Use green_coincidence_im instead.
class CoincidentPointsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The medium / model does not support the requested evaluation.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hits a pole or a coth(beta*omega/2) singularity.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Contour corner coincides with a declared pole, or the closing arc does not vanish.
class DegenerateContourError : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
