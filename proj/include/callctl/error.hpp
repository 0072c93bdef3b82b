#ifndef CALLCTL_ERROR_HPP
#define CALLCTL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace callctl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cell that is not part of the network was referenced.
class UnknownCellError : public Error {
 public:
  using Error::Error;
};

/// The spectrum size does not divide evenly into the requested partition.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (illegal assign, wrong topology).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An exact computation was asked for an instance above its configured limits.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario, selector, or grid input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace callctl

#endif  // CALLCTL_ERROR_HPP
