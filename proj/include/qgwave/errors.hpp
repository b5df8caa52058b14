#pragma once

#include <stdexcept>
#include <string>

namespace qgwave {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Field or grid dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "shape_error"; }
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

// Singular eigenproblem on a profile that is not strictly monotone.
class UnsupportedSingularity : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported_singularity"; }
};

// Grid refinement ladder exhausted before the Cauchy criterion was met.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  const char* kind() const noexcept override { return "convergence_failure"; }
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

// Root bracketing failed because the bracket had to grow without bound.
class DivergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "divergence_error"; }
};

// The wave-speed root does not exist for the requested target.
class NoRootError : public Error {
 public:
  NoRootError(const std::string& what, double lambda_at_min, double target)
      : Error(what), lambda_at_min_(lambda_at_min), target_(target) {}
  const char* kind() const noexcept override { return "no_root"; }
  double lambda_at_min() const noexcept { return lambda_at_min_; }
  double target() const noexcept { return target_; }

 private:
  double lambda_at_min_;
  double target_;
};

}  // namespace qgwave
