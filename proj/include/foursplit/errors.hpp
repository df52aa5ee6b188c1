#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace foursplit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NotSpdError : public Error {
 public:
  using Error::Error;
};

/// An oracle returned a non-finite value. `component` names the term
/// ("f", "g", "h", "p") and `iteration` is -1 outside of a solver run.
class OracleFailure : public Error {
 public:
  OracleFailure(std::string component, const std::string& what, long iteration = -1)
      : Error(what), component_(std::move(component)), iteration_(iteration) {}

  const std::string& component() const { return component_; }
  long iteration() const { return iteration_; }

 private:
  std::string component_;
  long iteration_;
};

class InfeasibleTau : public Error {
 public:
  using Error::Error;
};

class PresetInapplicable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t token, const std::string& what)
      : Error("line " + std::to_string(line) + ", token " + std::to_string(token) + ": " + what),
        line_(line),
        token_(token) {}

  std::size_t line() const { return line_; }
  std::size_t token() const { return token_; }

 private:
  std::size_t line_;
  std::size_t token_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace foursplit
