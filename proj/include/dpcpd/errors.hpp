#pragma once

#include <stdexcept>
#include <string>

namespace dpcpd {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid detection configuration; carries a discriminant naming the
/// violated constraint.
class ConfigError : public Error {
 public:
  enum class Violation {
    EpsilonNotPositive,
    GammaOutOfRange,
    GammaOnlineTooLarge,
    SeriesTooShort,
    EmptyCandidateRange,
    WindowSizeInvalid,
    ThresholdNotFinite,
  };

  ConfigError(Violation violation, const std::string& what)
      : Error(what), violation_(violation) {}

  Violation violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

/// An index is outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A sequence has an invalid length (e.g. odd where even is required).
class LengthError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked in a state that does not permit it.
class StateError : public Error {
 public:
  using Error::Error;
};

/// A noise scale parameter is not positive.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// An operation received an empty input that must be non-empty.
class EmptyError : public Error {
 public:
  using Error::Error;
};

/// The AboveThreshold mechanism was queried after it halted.
class HaltedError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (CSV, stream, config document).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpcpd
