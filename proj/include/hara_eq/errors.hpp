#pragma once

#include <stdexcept>
#include <string>

namespace hara_eq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range caller input (nonpositive price, bad JSON, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An argument left the domain where the model is defined.
class DomainError : public Error {
 public:
  DomainError(std::string argument, const std::string& what)
      : Error(what), argument_(std::move(argument)) {}
  const std::string& argument() const noexcept { return argument_; }

 private:
  std::string argument_;
};

// A quadrinomial coefficient vanished, or a constructed family degenerated.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class NotDoubleRootError : public Error {
 public:
  using Error::Error;
};

// The sufficient conditions cannot be applied to this economy at all.
class CannotCertifyError : public Error {
 public:
  using Error::Error;
};

}  // namespace hara_eq
