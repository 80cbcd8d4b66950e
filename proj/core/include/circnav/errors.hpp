#pragma once

#include <stdexcept>
#include <string>

namespace circnav {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (non-finite
/// input, nonpositive range or speed, zero-range state).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gain below the feasibility bound k >= 1/r_d.
class InfeasibleGainError : public Error {
 public:
  using Error::Error;
};

/// A requested boundary or root does not exist for the given parameters.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where the quantity is not defined (e.g. the
/// generator of the Lyapunov function on r = r_s).
class UndefinedPointError : public Error {
 public:
  using Error::Error;
};

/// Operation does not apply to the given parameter regime.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// Invalid simulation or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace circnav
