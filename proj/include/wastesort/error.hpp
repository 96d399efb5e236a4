#pragma once

#include <stdexcept>
#include <string>

namespace wastesort {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Malformed file content (bad JSON, bad number, wrong column count).
class ParseError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "parse"; }
};

// Well-formed content that does not match the expected schema.
class SchemaError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "schema"; }
};

// Schema-valid content that breaks a domain invariant (coincident bins etc).
class ValidationError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

// Precondition violated by an argument.
class DomainError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class IoError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

}  // namespace wastesort
