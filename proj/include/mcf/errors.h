#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mcf/exactnum.h"

namespace mcf {

// Base for every recoverable failure raised by the library.
class McfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public McfError {
 public:
  DivisionByZero() : McfError("division by zero") {}
  explicit DivisionByZero(const std::string& what) : McfError(what) {}
};

// Interval refinement ran out of its bit budget before a floor (or the sign of
// a denominator) could be certified. Usually means the input is rational or the
// components are linearly dependent.
class PrecisionExhausted : public McfError {
 public:
  explicit PrecisionExhausted(const std::string& what) : McfError(what) {}
};

// A quotient stream ended while the engine still needed input.
class InputExhausted : public McfError {
 public:
  explicit InputExhausted(std::string side)
      : McfError("input stream '" + side + "' exhausted"), side_(std::move(side)) {}
  const std::string& side() const { return side_; }

 private:
  std::string side_;
};

// The Jacobi-Perron iteration met an exactly integral last complete quotient.
// Carries the quotient tuples produced before termination.
class Terminated : public McfError {
 public:
  explicit Terminated(std::vector<Tuple> steps)
      : McfError("Jacobi-Perron expansion terminated after " + std::to_string(steps.size()) +
                 " steps"),
        steps_(std::move(steps)) {}
  const std::vector<Tuple>& steps() const { return steps_; }

 private:
  std::vector<Tuple> steps_;
};

}  // namespace mcf
