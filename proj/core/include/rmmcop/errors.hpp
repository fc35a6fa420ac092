#pragma once

#include <stdexcept>
#include <string>

namespace rmmcop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical precondition violated (invalid generator, undefined quotient, ...).
class MathDomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: file syntax, piece gaps/overlaps, bad preset keys.
class InputFormatError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its tolerance.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Q_C requested with a denominator below the admissibility threshold.
class UndefinedQuotientError : public MathDomainError {
 public:
  using MathDomainError::MathDomainError;
};

/// Generator recovery anchored at u_min is impossible because u_min = 0.
class AnchorUndefinedError : public MathDomainError {
 public:
  using MathDomainError::MathDomainError;
};

}  // namespace rmmcop
