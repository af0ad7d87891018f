#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxpoly {

/// Raised for malformed inputs: bad weight exponents, out-of-range degrees,
/// points outside [-1, 1].
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot be completed in double precision
/// (ill-conditioned reference set, non-convergence, failed bracketing).
/// `details` carries named numeric diagnostics for machine-readable reports.
class NumericalError : public std::runtime_error {
 public:
  using Detail = std::pair<std::string, double>;

  NumericalError(std::string kind, const std::string& what,
                 std::vector<Detail> details = {})
      : std::runtime_error(what), kind_(std::move(kind)), details_(std::move(details)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::vector<Detail>& details() const noexcept { return details_; }

 private:
  std::string kind_;
  std::vector<Detail> details_;
};

}  // namespace maxpoly
