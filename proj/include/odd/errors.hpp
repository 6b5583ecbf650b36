#pragma once

#include <stdexcept>
#include <string>

namespace odd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Offset or lattice index outside the matrix window.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class WindowMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A weighted, block or Bessel evaluator was asked to use a non-solid base norm.
class NonSolidBase : public Error {
 public:
  using Error::Error;
};

class SingularSection : public Error {
 public:
  SingularSection(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition_estimate() const { return condition_; }

 private:
  double condition_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace odd
