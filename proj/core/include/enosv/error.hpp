#ifndef ENOSV_ERROR_HPP_
#define ENOSV_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace enosv {

/// Invalid parameters or inputs (bad counts, incompatible basis, unknown case).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed: rank deficiency, CG breakdown, cycling, ...
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density or pressure left the physical range.
class NonPhysicalState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace enosv

#endif  // ENOSV_ERROR_HPP_
