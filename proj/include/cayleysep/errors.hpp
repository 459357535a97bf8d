#pragma once

#include <stdexcept>
#include <string>

namespace cayleysep {

enum class ErrorKind {
  Argument,
  Configuration,
  Resource,
  Parse,
  Unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& m) : Error(ErrorKind::Argument, m) {}
};

struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& m) : Error(ErrorKind::Configuration, m) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& m) : Error(ErrorKind::Resource, m) {}
};

struct ParseError : Error {
  ParseError(const std::string& m, long line = 0)
      : Error(ErrorKind::Parse, line > 0 ? "line " + std::to_string(line) + ": " + m : m),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& m) : Error(ErrorKind::Unsupported, m) {}
};

}  // namespace cayleysep
