#pragma once

#include <stdexcept>
#include <string>

namespace toralent {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was not met (dimension mismatch, bad argument).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Exact integer arithmetic exceeded the supported width.
class ArithmeticOverflow : public Error {
public:
  using Error::Error;
};

/// Numeric and algebraic unit-circle classification disagree.
class ClassificationAmbiguity : public Error {
public:
  ClassificationAmbiguity(const std::string& what, int numeric_center, int exact_center)
      : Error(what), numeric_center(numeric_center), exact_center(exact_center) {}
  int numeric_center;
  int exact_center;
};

class NoUnstableDirection : public Error {
public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
public:
  using Error::Error;
};

/// Newton solve for the inverse map did not converge.
class InversionError : public Error {
public:
  using Error::Error;
};

/// A configured budget (vertex cap, probe budget) was exceeded.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// Bump support would wrap around the torus.
class SupportWrapError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// An output file or directory could not be written.
class OutputError : public Error {
public:
  using Error::Error;
};

}  // namespace toralent
