#pragma once

#include <stdexcept>
#include <string>

namespace qca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormMismatch : public Error {
 public:
  FormMismatch() : Error("elements belong to different quantum tori") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by the zero element") {}
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class BadDirection : public Error {
 public:
  explicit BadDirection(int k)
      : Error("mutation direction " + std::to_string(k) + " is not in {1,2,3}") {}
};

class NegativeExponent : public Error {
 public:
  NegativeExponent() : Error("cluster monomial exponents must be nonnegative") {}
};

/// Requested element lies outside the configured generation window, or the
/// term budget was exhausted.
class GenerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OutOfFamilyRange : public Error {
 public:
  using Error::Error;
};

class DecompositionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qca
