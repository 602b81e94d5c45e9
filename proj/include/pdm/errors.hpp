#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pdm {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

/// A model parameter lies outside a stated window. `window()` carries the
/// window label exactly as registered in the catalog.
class ConstraintError : public Error {
 public:
  ConstraintError(std::string window, const std::string& detail)
      : Error("parameter window violated: " + window + " (" + detail + ")"),
        window_(std::move(window)) {}
  const std::string& window() const noexcept { return window_; }

 private:
  std::string window_;
};

class UnknownParameterError : public Error {
 public:
  using Error::Error;
};

class UnknownModelError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The triple (V_eff, W, f) does not satisfy the factorization condition.
class SIViolationError : public Error {
 public:
  using Error::Error;
};

class SIUnsolvableError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class NoSuchLevelError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class InconclusiveLimitError : public Error {
 public:
  using Error::Error;
};

class VerificationUnsupportedError : public Error {
 public:
  using Error::Error;
};

class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdm
