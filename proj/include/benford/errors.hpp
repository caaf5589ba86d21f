#pragma once

#include <stdexcept>
#include <string>

namespace benford {

/// Argument outside the mathematical domain of an operation (x <= 0, base <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation exists but is not defined for this seed family or spec.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Arguments are individually valid but given in the wrong order (e.g. a >= b for H*).
class ArgumentOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical integration did not meet its tolerance. Carries the achieved estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what + " (estimate " + std::to_string(estimate) + ", error " +
                           std::to_string(error_estimate) + ")"),
        estimate_(estimate),
        error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace benford
