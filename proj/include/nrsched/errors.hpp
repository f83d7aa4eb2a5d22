#pragma once

#include <stdexcept>
#include <string>

namespace nrsched {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a structural invariant (unsorted arrivals, negative fields, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the called operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No feasible schedule or cover exists.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Enumeration budget or oracle size cap exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace nrsched
