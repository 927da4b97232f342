#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slspec {

/// Coarse classification used by the command-line front end to pick an exit
/// status. Validation-type classes map to 2, numerical failures to 3.
enum class ErrorClass {
  Domain,
  Usage,
  Validation,
  Convergence,
  PartialResult,
  ContourDegeneracy,
  Accuracy,
  Integrator,
};

std::string_view to_string(ErrorClass c);
int exit_code(ErrorClass c);

class Error : public std::runtime_error {
 public:
  Error(ErrorClass c, const std::string& what) : std::runtime_error(what), class_(c) {}
  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

/// Argument outside the mathematical domain of a function (pole, λ = 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorClass::Domain, what) {}
};

/// Inconsistent arguments, e.g. Wronskian of fields at different λ.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorClass::Usage, what) {}
};

/// Malformed input data (potential files, flags).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorClass::Validation, what) {}
};

/// Picard iteration did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_increment)
      : Error(ErrorClass::Convergence, what), last_increment_(last_increment) {}
  double last_increment() const noexcept { return last_increment_; }

 private:
  double last_increment_;
};

/// Eigenvalue search stopped at its cap before finding everything requested.
class PartialResultError : public Error {
 public:
  PartialResultError(const std::string& what, std::vector<double> found)
      : Error(ErrorClass::PartialResult, what), found_(std::move(found)) {}
  const std::vector<double>& found() const noexcept { return found_; }

 private:
  std::vector<double> found_;
};

class ContourDegeneracyError : public Error {
 public:
  explicit ContourDegeneracyError(const std::string& what)
      : Error(ErrorClass::ContourDegeneracy, what) {}
};

class AccuracyError : public Error {
 public:
  explicit AccuracyError(const std::string& what) : Error(ErrorClass::Accuracy, what) {}
};

/// The reference ODE integrator gave up; `x()` is where it stalled.
class IntegratorError : public Error {
 public:
  IntegratorError(const std::string& what, double x)
      : Error(ErrorClass::Integrator, what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

}  // namespace slspec
