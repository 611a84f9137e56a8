#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace tfse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method (series, bisection, inverse iteration) hit its cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain a formula is valid on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Half-line truncation too short, or grid parameters invalid.
class GridError : public Error {
 public:
  using Error::Error;
};

/// The momentum window does not map into (b, 3b).
class WindowViolation : public Error {
 public:
  using Error::Error;
};

/// A value is not representable as a double. `t_limit` carries the first
/// time at which this happens when the caller can know it (NaN otherwise).
class OverflowGuard : public Error {
 public:
  explicit OverflowGuard(const std::string& what, double t_limit = std::numeric_limits<double>::quiet_NaN())
      : Error(what), t_limit_(t_limit) {}
  double t_limit() const noexcept { return t_limit_; }

 private:
  double t_limit_;
};

/// Quadrature did not settle under node doubling.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Values change sign inside a fit window.
class SignChange : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IOError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfse
