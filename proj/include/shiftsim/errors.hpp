#ifndef SHIFTSIM_ERRORS_HPP
#define SHIFTSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected representation of an eventually periodic permutation.
class ValidationError : public Error {
 public:
  enum class Code {
    kTableSize,           // table length != threshold
    kBadThreshold,        // threshold < period (period > 1), or threshold 0 with period > 1
    kNonPositiveEntry,    // table entry < 1
    kDuplicateEntry,      // repeated table entry
    kIncompleteResidues,  // window residues not a complete system mod p
    kInjectivityClosure,  // a tail value collides with a table entry
    kSurjectivityClosure, // a value <= max(table)+p is never attained
  };

  ValidationError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Syntax error in the expression DSL, with 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Precondition failures: unsupported class, membership failure, malformed nesting, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

// Frontier/radius caps exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Checked 64-bit arithmetic overflowed.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftsim

#endif
