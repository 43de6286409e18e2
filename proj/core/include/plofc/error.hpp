#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace plofc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UseBeforeAssign : public Error {
 public:
  UseBeforeAssign(std::string variable, int line)
      : Error("variable '" + variable + "' used before assignment on line " +
              std::to_string(line)),
        variable_(std::move(variable)),
        line_(line) {}

  const std::string& variable() const { return variable_; }
  int line() const { return line_; }

 private:
  std::string variable_;
  int line_;
};

class UnboundVariable : public Error {
 public:
  UnboundVariable(std::string variable, int line)
      : Error("unbound variable '" + variable + "'" +
              (line > 0 ? " on line " + std::to_string(line) : std::string())),
        variable_(std::move(variable)),
        line_(line) {}

  const std::string& variable() const { return variable_; }
  int line() const { return line_; }

 private:
  std::string variable_;
  int line_;
};

class ArithmeticOverflow : public Error {
 public:
  explicit ArithmeticOverflow(int line)
      : Error("64-bit arithmetic overflow" +
              (line > 0 ? " on line " + std::to_string(line) : std::string())),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class PathExplosion : public Error {
 public:
  PathExplosion(std::size_t branches, std::size_t cap)
      : Error("path explosion: " + std::to_string(branches) +
              " branch clauses exceed the cap of " + std::to_string(cap)),
        branches_(branches),
        cap_(cap) {}

  std::size_t branches() const { return branches_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t branches_;
  std::size_t cap_;
};

class InconsistentTrace : public Error {
 public:
  using Error::Error;
};

class UnknownTarget : public Error {
 public:
  explicit UnknownTarget(const std::string& target)
      : Error("target '" + target + "' is never assigned") {}
};

class TargetNotAssigned : public Error {
 public:
  explicit TargetNotAssigned(const std::string& target)
      : Error("target '" + target + "' is not assigned on the executed path") {}
};

class NoConstantsToMutate : public Error {
 public:
  NoConstantsToMutate()
      : Error("no constant with a + or - operator association to mutate") {}
};

}  // namespace plofc
