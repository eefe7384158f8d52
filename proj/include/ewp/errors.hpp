#ifndef EWP_ERRORS_HPP
#define EWP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ewp {

// Bad parameters or out-of-domain arguments. CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input exceeds a size guard (e.g. the quadratic-cost DP bound). Exit code 1.
class ResourceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A numeric guard tripped: series did not converge within the term budget,
// cancellation estimate exceeded the loss bound, optimizer failed. Exit code 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ewp

#endif
