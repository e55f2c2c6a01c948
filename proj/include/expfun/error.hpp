#pragma once

#include <stdexcept>
#include <string>

namespace expfun {

/// Raised when a computation cannot deliver a trustworthy number: a result
/// that should be real is not, a series or quadrature did not converge, or
/// the input is too ill-conditioned for the chosen algorithm.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace expfun
