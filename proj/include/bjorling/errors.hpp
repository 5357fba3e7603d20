#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace bjorling {

/// Failure categories. The CLI maps each one to exactly one exit code.
enum class ErrorKind {
  domain,             // evaluation outside the domain (z = 0, rho <= 0, ...)
  invalid_input,      // malformed data, violated data invariant
  range,              // parameter outside its admissible range
  precondition,       // operation precondition not met
  unknown_name,       // fixture / bound kind / suite lookup
  ellipticity,        // sup|nu| >= 1
  slope,              // Gauss vector not in the northern hemisphere
  compatibility,      // slope data violates |w_theta| <= sqrt(K^2-1)|h_theta|
  orientation,        // nonpositive Jacobian where a positive one is required
  singularity,        // critical point of the parametrization
  move_contour,       // zero of h_z conj(h_zbar) on the integration contour
  branch_obstruction, // no single-valued square root
  non_liftable,       // nonzero period of the height function
  inconsistent_data,  // Bjorling data does not produce a conformal surface
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        double value = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Diagnostic number attached to the failure (period defect, worst margin, ...).
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::range: return "range error";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::unknown_name: return "unknown name";
    case ErrorKind::ellipticity: return "ellipticity failure";
    case ErrorKind::slope: return "slope error";
    case ErrorKind::compatibility: return "compatibility violated";
    case ErrorKind::orientation: return "orientation error";
    case ErrorKind::singularity: return "singular point";
    case ErrorKind::move_contour: return "zero on contour";
    case ErrorKind::branch_obstruction: return "square-root branch obstruction";
    case ErrorKind::non_liftable: return "non-liftable height";
    case ErrorKind::inconsistent_data: return "inconsistent data";
  }
  return "error";
}

}  // namespace bjorling
