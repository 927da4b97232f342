#include "slspec/errors.hpp"

namespace slspec {

std::string_view to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::Domain:
      return "domain_error";
    case ErrorClass::Usage:
      return "usage_error";
    case ErrorClass::Validation:
      return "validation_error";
    case ErrorClass::Convergence:
      return "convergence_error";
    case ErrorClass::PartialResult:
      return "partial_result_error";
    case ErrorClass::ContourDegeneracy:
      return "contour_degeneracy_error";
    case ErrorClass::Accuracy:
      return "accuracy_error";
    case ErrorClass::Integrator:
      return "integrator_error";
  }
  return "unknown_error";
}

int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::Domain:
    case ErrorClass::Usage:
    case ErrorClass::Validation:
      return 2;
    case ErrorClass::Convergence:
    case ErrorClass::PartialResult:
    case ErrorClass::ContourDegeneracy:
    case ErrorClass::Accuracy:
    case ErrorClass::Integrator:
      return 3;
  }
  return 3;
}

}  // namespace slspec
