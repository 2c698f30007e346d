#pragma once

#include <stdexcept>
#include <string>

namespace anlab {

// Base of every error the library throws. The CLI maps the subclasses onto
// exit codes (see tools/anlab.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |z| >= 1 handed to a disc function, negative radius, and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON specification or out-of-range parameter.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// A numerical procedure stopped before reaching the requested tolerance.
// Carries the best value it had and the error it achieved.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, double best_value, double achieved_error)
      : Error(what), best_value_(best_value), achieved_error_(achieved_error) {}

  double best_value() const noexcept { return best_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_value_;
  double achieved_error_;
};

// A mathematical hypothesis required by an operation does not hold.
// `hypothesis()` names it in words, e.g. "order less than one".
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& hypothesis, const std::string& detail)
      : Error("precondition violated (" + hypothesis + "): " + detail),
        hypothesis_(hypothesis) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

// Input is degenerate for the requested statistic (f == 0, constant moduli...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace anlab
