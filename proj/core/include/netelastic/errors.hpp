#pragma once

#include <stdexcept>
#include <string>

namespace netelastic {

/// Error classes surfaced by the library. The CLI maps each to a distinct
/// exit code.
enum class ErrorKind { parse, parameter, compute, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorKind::parameter, what) {}
};

class ComputeError : public Error {
 public:
  explicit ComputeError(const std::string& what)
      : Error(ErrorKind::compute, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace netelastic
