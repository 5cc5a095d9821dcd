#pragma once

#include <stdexcept>
#include <string>

namespace crmw {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class VarSpaceMismatch : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

// Malformed textual input. `position` is a byte offset when known.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t position = 0)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Well-formed JSON that does not match the expected schema.
class SchemaError : public Error {
public:
  SchemaError(const std::string &path, const std::string &what)
      : Error(path + ": " + what), path_(path) {}
  const std::string &path() const { return path_; }

private:
  std::string path_;
};

// An internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace crmw
