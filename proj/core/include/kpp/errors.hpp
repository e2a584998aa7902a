#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

/// A query outside the domain an object was constructed for.
class RangeError : public std::runtime_error {
public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A time stepper produced values outside the admissible band.
class StabilityError : public std::runtime_error {
public:
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A planned run would exceed a configured resource budget.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kpp
