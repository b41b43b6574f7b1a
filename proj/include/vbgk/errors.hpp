#pragma once

#include <stdexcept>
#include <string>

namespace vbgk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonPositiveInput : public Error {
 public:
  using Error::Error;
};

/// Parameters violate 0 < a < 1/4 (or another structural constraint).
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class NonPositiveDensity : public Error {
 public:
  using Error::Error;
};

class NotDivergenceFree : public Error {
 public:
  using Error::Error;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class NonPositiveError : public Error {
 public:
  using Error::Error;
};

/// Raised by the time integrator when the state stops being admissible.
/// Carries the last time at which the state was still valid.
class SimulationAborted : public Error {
 public:
  SimulationAborted(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}
  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

class BlowupDetected : public SimulationAborted {
 public:
  using SimulationAborted::SimulationAborted;
};

class DensityCollapse : public SimulationAborted {
 public:
  using SimulationAborted::SimulationAborted;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  /// 1-based line number, or 0 when the error is not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace vbgk
