#pragma once

#include <stdexcept>
#include <string>

namespace hbfde {

// Input outside the mathematical domain of a function (pole, non-finite value, t <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation point outside the sampled range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Caller violated a precondition (bad parameters, empty grids, unsupported branch).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Problem data fails a hypothesis of the solver (boundary compatibility, T > 0, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inverse reconstruction denominator fell below the configured margin.
class IllPosedError : public std::runtime_error {
 public:
  IllPosedError(int mode, double denominator, const std::string& what)
      : std::runtime_error(what), mode_(mode), denominator_(denominator) {}

  int mode() const noexcept { return mode_; }
  double denominator() const noexcept { return denominator_; }

 private:
  int mode_;
  double denominator_;
};

// Numerical failure that should not happen for valid input.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hbfde
