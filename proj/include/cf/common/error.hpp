#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cf {

/// Root of the error hierarchy. Each family maps to one CLI exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration, bad arguments or a violated precondition. Exit code 1.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Backend unreachable, retries exhausted, or the server broke the wire contract. Exit code 2.
class BackendError : public Error {
public:
  using Error::Error;
};

class TransportError : public BackendError {
public:
  TransportError(const std::string& what, std::size_t begin, std::size_t end)
      : BackendError(what), begin_(begin), end_(end) {}

  /// Half-open index range of the inputs that could not be served.
  std::size_t begin() const noexcept { return begin_; }
  std::size_t end() const noexcept { return end_; }

private:
  std::size_t begin_;
  std::size_t end_;
};

class ProtocolError : public BackendError {
public:
  using BackendError::BackendError;
};

/// Malformed or inconsistent data (records, files, model responses). Exit code 3.
class DataError : public Error {
public:
  using Error::Error;
};

/// A record failed to parse or validate. `line` is 1-based.
class SchemaError : public DataError {
public:
  SchemaError(const std::string& path, std::size_t line, const std::string& what)
      : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public DataError {
public:
  using DataError::DataError;
};

}  // namespace cf
