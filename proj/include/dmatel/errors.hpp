#pragma once
#include <stdexcept>
#include <string>

namespace dmatel {

//! Base of every error raised by the library. The CLI maps ValidationError
//! to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class PreconditionError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Z*alpha >= |kappa|: gamma would be imaginary.
class SubcriticalError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class PoleError : public Error {
public:
  using Error::Error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class BranchCutError : public Error {
public:
  using Error::Error;
};

class DegenerateTransformError : public Error {
public:
  using Error::Error;
};

class UnsupportedM : public Error {
public:
  using Error::Error;
};

class PoleMisconfigured : public Error {
public:
  using Error::Error;
};

class WindowTooWide : public Error {
public:
  using Error::Error;
};

} // namespace dmatel
