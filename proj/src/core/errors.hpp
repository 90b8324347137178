#pragma once

#include <stdexcept>
#include <string>

namespace defexp {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input fell outside the mathematical domain of an operation.  Carries
/// the offending value together with the admissible open interval (a
/// degenerate interval, lower == upper, marks a single excluded point).
class DomainViolation : public Error {
 public:
  DomainViolation(const std::string& message, double offending, double lower,
                  double upper)
      : Error(message), offending_(offending), lower_(lower), upper_(upper) {}

  double offending() const noexcept { return offending_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double offending_;
  double lower_;
  double upper_;
};

/// A parameter was structurally invalid: negative count, mismatched enum
/// pairing, non-finite input, and the like.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A truncated series hit its term budget before meeting the tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& message, int terms_used)
      : Error(message), terms_used_(terms_used) {}
  int terms_used() const noexcept { return terms_used_; }

 private:
  int terms_used_;
};

/// A computed result came out non-finite.
class NonFiniteResult : public Error {
 public:
  using Error::Error;
};

/// Identity id not present in the verification registry.
class UnknownIdentity : public Error {
 public:
  using Error::Error;
};

/// A verification grid contained no admissible sample point.
class EmptyGrid : public Error {
 public:
  using Error::Error;
};

}  // namespace defexp
