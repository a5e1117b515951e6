#ifndef ARITHDYN_ERRORS_HPP
#define ARITHDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arithdyn {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation ran past its memory/iteration budget. `completed` names the
// last fully finished stage (iteration index, degree index, ...), or -1.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, long completed = -1)
      : Error(what), completed_(completed) {}
  long completed() const { return completed_; }

 private:
  long completed_;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class UnsupportedExtension : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace arithdyn

#endif
