#pragma once

#include <stdexcept>
#include <string>

namespace chebfs {

// Every failure raised by the library derives from Error; kind() is the
// machine-readable tag the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(const char* kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  const char* kind() const noexcept { return kind_; }

 private:
  const char* kind_;
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what)
      : Error("invalid_input", what) {}
};

class DefinitenessError : public Error {
 public:
  explicit DefinitenessError(const std::string& what)
      : Error("definiteness", what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class AccuracyError : public Error {
 public:
  explicit AccuracyError(const std::string& what) : Error("accuracy", what) {}
};

// Numerical breakdown: a check that must hold mathematically did not.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what)
      : Error("internal_inconsistency", what) {}
};

}  // namespace chebfs
