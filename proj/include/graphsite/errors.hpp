#pragma once

#include <stdexcept>
#include <string>

namespace graphsite {

// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line numbers are 1-based; column 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column = 0)
      : Error(message), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A construct outside the supported query subset (OPTIONAL, UNION, ...).
class UnsupportedFeatureError : public Error {
 public:
  using Error::Error;
};

// Lookup of a prefix label that was never declared.
class UndefinedPrefixError : public Error {
 public:
  using Error::Error;
};

// Failure while rendering a template; the message carries template name and line.
class RenderError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Fatal site build problem (missing template file, write failure, ...).
class BuildError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphsite
