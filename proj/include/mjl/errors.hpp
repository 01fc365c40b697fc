#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mjl {

struct SourceLoc {
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(column); }
  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

// Base of every error raised by the runtime. `kind()` is the user-facing
// error name ("NoMethodError", "BoundsError", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }
  const SourceLoc& location() const { return loc_; }

  // Only the innermost location sticks.
  void attach_location(SourceLoc loc) {
    if (!loc_.valid()) loc_ = loc;
  }

 private:
  std::string kind_;
  SourceLoc loc_;
};

class TypeError : public Error {
 public:
  explicit TypeError(const std::string& msg) : Error("TypeError", msg) {}
};

class NoMethodError : public Error {
 public:
  NoMethodError(const std::string& function, const std::string& arg_types)
      : Error("NoMethodError", "no method " + function + " matching " + arg_types),
        function_(function) {}
  const std::string& function() const { return function_; }

 private:
  std::string function_;
};

class AmbiguityError : public Error {
 public:
  explicit AmbiguityError(const std::string& msg) : Error("AmbiguityError", msg) {}
};

class BoundsError : public Error {
 public:
  BoundsError(std::int64_t dimension, std::int64_t index)
      : Error("BoundsError", "index " + std::to_string(index) + " out of bounds in dimension " +
                                 std::to_string(dimension)),
        dimension_(dimension),
        index_(index) {}
  std::int64_t dimension() const { return dimension_; }
  std::int64_t index() const { return index_; }

 private:
  std::int64_t dimension_;
  std::int64_t index_;
};

class RankMismatchError : public Error {
 public:
  RankMismatchError(std::size_t expected, std::size_t got)
      : Error("RankMismatchError", "expected " + std::to_string(expected) + " indices, got " +
                                       std::to_string(got)) {}
};

class UnitMismatchError : public Error {
 public:
  UnitMismatchError(const std::string& lhs, const std::string& rhs)
      : Error("UnitMismatchError", "unit mismatch: " + lhs + " vs " + rhs), lhs_(lhs), rhs_(rhs) {}
  const std::string& lhs() const { return lhs_; }
  const std::string& rhs() const { return rhs_; }

 private:
  std::string lhs_;
  std::string rhs_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, SourceLoc loc) : Error("SyntaxError", msg) { attach_location(loc); }
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error("ArgumentError", msg) {}
};

class UndefVarError : public Error {
 public:
  explicit UndefVarError(const std::string& name) : Error("UndefVarError", name + " not defined") {}
};

class UserError : public Error {
 public:
  explicit UserError(const std::string& msg) : Error("ErrorException", msg) {}
};

class StackOverflowError : public Error {
 public:
  StackOverflowError() : Error("StackOverflowError", "call depth limit exceeded") {}
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("EmptyCorpusError", "corpus has no methods") {}
};

class CorpusFormatError : public Error {
 public:
  CorpusFormatError(std::size_t line, const std::string& msg)
      : Error("CorpusFormatError", "line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mjl
