#pragma once

#include <stdexcept>
#include <string>

namespace bures {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Coefficients or eigenvalues outside the Bell tetrahedron, or a matrix that
/// is not a density matrix.
class InvalidState : public Error {
  public:
    using Error::Error;
};

/// Scalar argument outside the domain of a function.
class DomainError : public Error {
  public:
    using Error::Error;
};

class NonHermitian : public Error {
  public:
    using Error::Error;
};

class NotPsd : public Error {
  public:
    using Error::Error;
};

/// Internal consistency failure of the closest-product branch selection.
class BranchInconsistency : public Error {
  public:
    using Error::Error;
};

class QuadratureFailure : public Error {
  public:
    using Error::Error;
};

/// A numerical search found a strictly better point than the claimed optimum.
class AnsatzViolation : public Error {
  public:
    using Error::Error;
};

}  // namespace bures
