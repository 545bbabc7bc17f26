#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace freewave {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes, so new error kinds should derive from the closest category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that violates a documented schema or a structural precondition of a
// nonlinearity (bad JSON, missing field, failed classification).
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

// Argument outside the interval on which an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NoSemiWaveError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidHeightError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OutOfWindowError : public DomainError {
 public:
  OutOfWindowError(const std::string& what, double c_star_l, double c_star_r)
      : DomainError(what), c_star_l(c_star_l), c_star_r(c_star_r) {}
  double c_star_l;
  double c_star_r;
};

// c outside the admissible speed interval (lo, hi) of a three-species wave.
class OutOfIntervalError : public DomainError {
 public:
  OutOfIntervalError(const std::string& what, double lo, double hi)
      : DomainError(what), lo(lo), hi(hi) {}
  double lo;
  double hi;
};

class CaseError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoRootError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Numerical machinery failures.
class BracketError : public Error {
 public:
  BracketError(const std::string& what, double lo, double hi)
      : Error(what), lo(lo), hi(hi) {}
  double lo;
  double hi;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double t, std::vector<double> state)
      : Error(what), t(t), state(std::move(state)) {}
  double t;
  std::vector<double> state;
};

}  // namespace freewave
