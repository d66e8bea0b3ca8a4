#ifndef JACOBILAB_ERRORS_HPP
#define JACOBILAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jacobilab {

// Base class for all library failures. NaN never escapes silently; every
// numeric failure mode maps to one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at (or too close to) a pole of a Gamma-type factor.
class PoleError : public Error {
 public:
  using Error::Error;
};

// A series or transformation failed to reach tolerance within its cap,
// or lost too much significance to meet the accuracy contract.
class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

// A least-squares / collocation system exceeded the condition threshold.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

// Grid misuse: empty range, unresolved oscillation, truncation radius not
// aligned with a panel boundary, R beyond the grid, ...
class GridError : public Error {
 public:
  using Error::Error;
};

// Configuration file rejected at load time; message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace jacobilab

#endif
