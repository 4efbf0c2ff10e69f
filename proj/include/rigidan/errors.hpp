#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rigidan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (wrong level, non-unit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter record. Each violated constraint is kept separately.
class ParameterError : public Error {
 public:
  explicit ParameterError(std::vector<std::string> violations);
  ParameterError(const std::string& single);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Two objects that must share parameters (context, character, levels) do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rigidan
