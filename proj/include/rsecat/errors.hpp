#pragma once

#include <stdexcept>
#include <string>

namespace rsecat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A degree outside the declared window was requested.
class WindowViolation : public Error {
 public:
  using Error::Error;
};

class NotAChainMap : public Error {
 public:
  using Error::Error;
};

/// d∘d ≠ 0; the message names the offending basis element.
class DSquaredNonzero : public Error {
 public:
  using Error::Error;
};

class InfiniteDimension : public Error {
 public:
  using Error::Error;
};

class NotSurjective : public Error {
 public:
  NotSurjective(const std::string& what, int degree) : Error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

class NotDifferentialIdeal : public Error {
 public:
  using Error::Error;
};

class NoWitness : public Error {
 public:
  using Error::Error;
};

/// The two msecat criteria disagreed. This indicates a bug, not a mathematical outcome.
class CriterionMismatch : public Error {
 public:
  using Error::Error;
};

class Undetermined : public Error {
 public:
  using Error::Error;
};

/// Malformed input to a constructor (bad degree, unknown generator, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace rsecat
