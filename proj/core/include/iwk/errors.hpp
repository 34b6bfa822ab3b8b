#pragma once

#include <stdexcept>
#include <string>

namespace iwk {

/// Base class for every domain failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A p-adic computation needed more digits than the working precision holds.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// An enumeration or ring size exceeded its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotASubmodule : public Error {
 public:
  using Error::Error;
};

class NotMinimalAtPrime : public Error {
 public:
  using Error::Error;
};

/// Point counting was requested at a prime dividing the minimal discriminant.
class BadReductionPrime : public Error {
 public:
  using Error::Error;
};

/// The auxiliary prime p of a condition check divides the minimal discriminant.
class BadReductionAtP : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

/// A self-verifying construction produced an output its own checker rejects.
class PostconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (curve literals, module literals, CSV rows, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace iwk
