#ifndef EITPOL_ERRORS_HPP
#define EITPOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eitpol {

/// Invalid or inconsistent user input (bad key, unit, scheme/polarization mismatch).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver or quadrature that could not deliver a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eitpol

#endif  // EITPOL_ERRORS_HPP
