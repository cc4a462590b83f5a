#pragma once

#include <stdexcept>
#include <string>

namespace sysrepro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or text (report, scenario, TSL spec, artifact).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, const std::string& what)
      : Error(source.empty() ? what : source + ": " + what), source_(source) {}

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
};

/// Missing files, empty directories, violated preconditions on arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid pipeline configuration (bad numbers, missing seed).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sysrepro
