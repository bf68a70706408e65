#pragma once

#include <stdexcept>
#include <string>

namespace iqofdm {

// Base for every library error. Callers that only need a diagnostic can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector length is not acceptable for the operation (non power of two, mismatch, ...).
class InvalidSize : public Error {
 public:
  using Error::Error;
};

// Inconsistent or out-of-range configuration (CP shorter than channel memory, bad key, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A power-delay profile whose last path does not fit inside the CIR window.
class ProfileTooLong : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Numerical domain violation: zero pilot, degenerate kappa, nonpositive loss denominator.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Rank-deficient per-bin least-squares design.
class SingularFit : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace iqofdm
