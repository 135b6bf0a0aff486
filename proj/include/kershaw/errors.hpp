#pragma once

#include <stdexcept>
#include <string>

namespace kershaw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveDensity : public Error {
 public:
  using Error::Error;
};

class OrderTooLow : public Error {
 public:
  using Error::Error;
};

class NotRealizable : public Error {
 public:
  using Error::Error;
};

class ReconstructionFailed : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class BoundaryMoment : public Error {
 public:
  using Error::Error;
};

class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// Raised by the solver when a cell leaves the realizable set beyond the
/// rescue tolerance.
class RealizabilityLost : public Error {
 public:
  RealizabilityLost(const std::string& what, std::size_t cell, double slack)
      : Error(what), cell_(cell), slack_(slack) {}

  std::size_t cell() const noexcept { return cell_; }
  double slack() const noexcept { return slack_; }

 private:
  std::size_t cell_;
  double slack_;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string field)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace kershaw
